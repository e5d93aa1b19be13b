//! Exact arithmetic in small finite coefficient rings, quaternion algebras
//! over them, and 2×2 matrices over `ℤ/p^m`.
//!
//! Everything is stored as canonical residues in machine words so that the
//! closure engine can multiply millions of elements without allocating.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which finite ring the coordinates live in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RingKind {
    /// `ℤ/p^m`, elements are residues `0..p^m`.
    IntegersMod { m: u32 },
    /// `𝔽_p[ε]` with `ε² = 0`; `a + bε` is stored as `a + b·p`.
    DualNumbers,
}

/// A finite commutative local ring of prime-power order with residue field `𝔽_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CoefficientRing {
    kind: RingKind,
    p: u32,
    size: u32,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl CoefficientRing {
    pub fn integers_mod(p: u32, m: u32) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::InvalidParameter(format!("{p} is not prime")));
        }
        if m == 0 {
            return Err(Error::InvalidParameter("precision must be at least 1".into()));
        }
        let size = (p as u64)
            .checked_pow(m)
            .filter(|&s| s <= 1 << 16)
            .ok_or_else(|| Error::InvalidParameter(format!("{p}^{m} does not fit a 16-bit coordinate")))?;
        Ok(Self { kind: RingKind::IntegersMod { m }, p, size: size as u32 })
    }

    pub fn dual_numbers(p: u32) -> Result<Self> {
        if !is_prime(p as u64) || p > 255 {
            return Err(Error::InvalidParameter(format!("{p} is not a small prime")));
        }
        Ok(Self { kind: RingKind::DualNumbers, p, size: p * p })
    }

    pub fn kind(&self) -> RingKind {
        self.kind
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn zero(&self) -> u32 {
        0
    }

    pub fn one(&self) -> u32 {
        1
    }

    /// The element `ε` of the dual numbers, or `p` in `ℤ/p^m`.
    pub fn uniformizer(&self) -> u32 {
        match self.kind {
            RingKind::IntegersMod { .. } => self.p % self.size,
            RingKind::DualNumbers => self.p,
        }
    }

    /// Image of an integer.
    pub fn from_int(&self, v: i64) -> u32 {
        let modulus = match self.kind {
            RingKind::IntegersMod { .. } => self.size as i64,
            RingKind::DualNumbers => self.p as i64,
        };
        v.rem_euclid(modulus) as u32
    }

    /// Build `a + bε` in the dual numbers.
    pub fn dual(&self, a: i64, b: i64) -> u32 {
        debug_assert_eq!(self.kind, RingKind::DualNumbers);
        let p = self.p as i64;
        (a.rem_euclid(p) + b.rem_euclid(p) * p) as u32
    }

    #[inline]
    pub fn add(&self, x: u32, y: u32) -> u32 {
        match self.kind {
            RingKind::IntegersMod { .. } => {
                let s = x + y;
                if s >= self.size {
                    s - self.size
                } else {
                    s
                }
            }
            RingKind::DualNumbers => {
                let p = self.p;
                ((x % p + y % p) % p) + ((x / p + y / p) % p) * p
            }
        }
    }

    #[inline]
    pub fn neg(&self, x: u32) -> u32 {
        match self.kind {
            RingKind::IntegersMod { .. } => {
                if x == 0 {
                    0
                } else {
                    self.size - x
                }
            }
            RingKind::DualNumbers => {
                let p = self.p;
                (p - x % p) % p + ((p - x / p) % p) * p
            }
        }
    }

    #[inline]
    pub fn sub(&self, x: u32, y: u32) -> u32 {
        self.add(x, self.neg(y))
    }

    #[inline]
    pub fn mul(&self, x: u32, y: u32) -> u32 {
        match self.kind {
            RingKind::IntegersMod { .. } => ((x as u64 * y as u64) % self.size as u64) as u32,
            RingKind::DualNumbers => {
                let p = self.p;
                let (a, b) = (x % p, x / p);
                let (c, d) = (y % p, y / p);
                (a * c) % p + ((a * d + b * c) % p) * p
            }
        }
    }

    pub fn pow(&self, x: u32, mut e: u64) -> u32 {
        let mut base = x;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn is_unit(&self, x: u32) -> bool {
        !x.is_multiple_of(self.p)
    }

    /// Multiplicative inverse of a unit.
    pub fn inv(&self, x: u32) -> Option<u32> {
        if !self.is_unit(x) {
            return None;
        }
        match self.kind {
            RingKind::IntegersMod { .. } => {
                let (mut r0, mut r1) = (self.size as i64, x as i64);
                let (mut t0, mut t1) = (0i64, 1i64);
                while r1 != 0 {
                    let q = r0 / r1;
                    (r0, r1) = (r1, r0 - q * r1);
                    (t0, t1) = (t1, t0 - q * t1);
                }
                Some(t0.rem_euclid(self.size as i64) as u32)
            }
            RingKind::DualNumbers => {
                // (a + bε)^{-1} = a^{-1} - b a^{-2} ε
                let p = self.p as u64;
                let a = (x % self.p) as u64;
                let b = (x / self.p) as u64;
                let a_inv = mod_pow(a, p - 2, p);
                let b_part = (p - (b * a_inv % p * a_inv % p)) % p;
                Some((a_inv + b_part * p) as u32)
            }
        }
    }

    /// Valuation with respect to the maximal ideal (`p` resp. `ε`); `None` for zero.
    pub fn valuation(&self, x: u32) -> Option<u32> {
        if x == 0 {
            return None;
        }
        match self.kind {
            RingKind::IntegersMod { .. } => {
                let mut v = 0;
                let mut y = x;
                while y.is_multiple_of(self.p) {
                    y /= self.p;
                    v += 1;
                }
                Some(v)
            }
            RingKind::DualNumbers => Some(if !x.is_multiple_of(self.p) { 0 } else { 1 }),
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.size
    }
}

fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// Smallest positive quadratic non-residue modulo an odd prime.
pub fn smallest_nonresidue(p: u32) -> u32 {
    (2..p).find(|&t| !is_square_mod(t, p)).unwrap_or(0)
}

pub fn is_square_mod(t: u32, p: u32) -> bool {
    let t = t % p;
    t == 0 || mod_pow(t as u64, (p as u64 - 1) / 2, p as u64) == 1
}

/// Coordinates on the basis `1, i, j, k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Quaternion(pub [u32; 4]);

impl Quaternion {
    pub const fn new(a: u32, b: u32, c: u32, d: u32) -> Self {
        Quaternion([a, b, c, d])
    }

    #[inline]
    pub fn pack(&self) -> u64 {
        let [a, b, c, d] = self.0;
        a as u64 | (b as u64) << 16 | (c as u64) << 32 | (d as u64) << 48
    }

    #[inline]
    pub fn unpack(key: u64) -> Self {
        Quaternion([
            (key & 0xffff) as u32,
            (key >> 16 & 0xffff) as u32,
            (key >> 32 & 0xffff) as u32,
            (key >> 48 & 0xffff) as u32,
        ])
    }
}

/// Which distinguished ideal the algebra carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IdealShape {
    /// `𝔪 = Δ·j` over `ℤ/p^M` with `j² = p`.
    PrincipalJ,
    /// `𝔪 = Δ·i + Δ·j` over `𝔽_p[ε]` with `i² = j² = ε`.
    SpannedByIJ,
}

/// The algebra `(A, B / R)`: `i² = A`, `j² = B`, `k = ij = −ji`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuaternionAlgebra {
    pub ring: CoefficientRing,
    pub a: u32,
    pub b: u32,
    pub ideal: IdealShape,
}

impl QuaternionAlgebra {
    /// `Δ_p` truncated at precision `M`: `(t, p / ℤ/p^M)`.
    pub fn delta(p: u32, t: u32, precision: u32) -> Result<Self> {
        if p <= 3 {
            return Err(Error::InvalidParameter(format!("p = {p} must exceed 3")));
        }
        let ring = CoefficientRing::integers_mod(p, precision)?;
        if is_square_mod(t, p) {
            return Err(Error::InvalidParameter(format!("{t} is a square modulo {p}")));
        }
        Ok(Self { ring, a: ring.from_int(t as i64), b: ring.uniformizer(), ideal: IdealShape::PrincipalJ })
    }

    /// `(ε, ε / 𝔽_3[ε])`.
    pub fn yo() -> Self {
        let ring = CoefficientRing::dual_numbers(3).expect("3 is prime");
        let eps = ring.uniformizer();
        Self { ring, a: eps, b: eps, ideal: IdealShape::SpannedByIJ }
    }

    pub fn size(&self) -> u64 {
        (self.ring.size() as u64).pow(4)
    }

    pub fn one(&self) -> Quaternion {
        Quaternion([1, 0, 0, 0])
    }

    pub fn i(&self) -> Quaternion {
        Quaternion([0, 1, 0, 0])
    }

    pub fn j(&self) -> Quaternion {
        Quaternion([0, 0, 1, 0])
    }

    pub fn k(&self) -> Quaternion {
        Quaternion([0, 0, 0, 1])
    }

    pub fn scalar(&self, c: u32) -> Quaternion {
        Quaternion([c, 0, 0, 0])
    }

    pub fn add(&self, x: Quaternion, y: Quaternion) -> Quaternion {
        let r = &self.ring;
        Quaternion(std::array::from_fn(|t| r.add(x.0[t], y.0[t])))
    }

    pub fn sub(&self, x: Quaternion, y: Quaternion) -> Quaternion {
        let r = &self.ring;
        Quaternion(std::array::from_fn(|t| r.sub(x.0[t], y.0[t])))
    }

    pub fn scale(&self, c: u32, x: Quaternion) -> Quaternion {
        let r = &self.ring;
        Quaternion(std::array::from_fn(|t| r.mul(c, x.0[t])))
    }

    #[inline]
    pub fn mul(&self, x: Quaternion, y: Quaternion) -> Quaternion {
        let r = &self.ring;
        let [x0, x1, x2, x3] = x.0;
        let [y0, y1, y2, y3] = y.0;
        let (a, b) = (self.a, self.b);
        let ab = r.mul(a, b);
        let m = |u, v| r.mul(u, v);
        let z0 = r.sub(r.add(r.add(m(x0, y0), m(a, m(x1, y1))), m(b, m(x2, y2))), m(ab, m(x3, y3)));
        let z1 = r.add(r.add(m(x0, y1), m(x1, y0)), m(b, r.sub(m(x3, y2), m(x2, y3))));
        let z2 = r.add(r.add(m(x0, y2), m(x2, y0)), m(a, r.sub(m(x1, y3), m(x3, y1))));
        let z3 = r.add(r.add(m(x0, y3), m(x3, y0)), r.sub(m(x1, y2), m(x2, y1)));
        Quaternion([z0, z1, z2, z3])
    }

    #[inline]
    pub fn bar(&self, x: Quaternion) -> Quaternion {
        let r = &self.ring;
        let [a, b, c, d] = x.0;
        Quaternion([a, r.neg(b), r.neg(c), r.neg(d)])
    }

    /// `x·bar(x) = a² − A b² − B c² + AB d²`, a central scalar.
    pub fn norm(&self, x: Quaternion) -> u32 {
        let r = &self.ring;
        let [x0, x1, x2, x3] = x.0;
        let ab = r.mul(self.a, self.b);
        let sq = |u| r.mul(u, u);
        r.add(r.sub(r.sub(sq(x0), r.mul(self.a, sq(x1))), r.mul(self.b, sq(x2))), r.mul(ab, sq(x3)))
    }

    pub fn inverse(&self, x: Quaternion) -> Option<Quaternion> {
        let n_inv = self.ring.inv(self.norm(x))?;
        Some(self.scale(n_inv, self.bar(x)))
    }

    pub fn pow(&self, x: Quaternion, mut e: u64) -> Quaternion {
        let mut base = x;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Weight of each basis vector in the `𝔪`-adic filtration.
    fn basis_weights(&self) -> [u32; 4] {
        match self.ideal {
            IdealShape::PrincipalJ => [0, 0, 1, 1],
            IdealShape::SpannedByIJ => [0, 1, 1, 2],
        }
    }

    /// Largest `k` with `x ∈ 𝔪^k`; `None` means `x = 0`.
    pub fn ideal_valuation(&self, x: Quaternion) -> Option<u32> {
        let w = self.basis_weights();
        (0..4).filter_map(|t| self.ring.valuation(x.0[t]).map(|v| w[t] + 2 * v)).min()
    }

    pub fn in_ideal_power(&self, x: Quaternion, k: u32) -> bool {
        self.ideal_valuation(x).is_none_or(|v| v >= k)
    }

    /// Generators of the distinguished ideal as a left module.
    pub fn ideal_gens(&self) -> Vec<Quaternion> {
        match self.ideal {
            IdealShape::PrincipalJ => vec![self.j()],
            IdealShape::SpannedByIJ => vec![self.i(), self.j()],
        }
    }

    /// Every element of the algebra, in coordinate order.
    pub fn elements(&self) -> impl Iterator<Item = Quaternion> + '_ {
        let s = self.ring.size();
        (0..self.size()).map(move |mut v| {
            let mut c = [0u32; 4];
            for slot in c.iter_mut() {
                *slot = (v % s as u64) as u32;
                v /= s as u64;
            }
            Quaternion(c)
        })
    }
}

/// A 2×2 matrix `[[m0, m1], [m2, m3]]` over `ℤ/modulus`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Mat2(pub [u32; 4]);

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2([1, 0, 0, 1]);

    pub fn new(modulus: u32, entries: [i64; 4]) -> Self {
        Mat2(entries.map(|e| e.rem_euclid(modulus as i64) as u32))
    }

    #[inline]
    pub fn mul(&self, other: &Mat2, modulus: u32) -> Mat2 {
        let q = modulus as u64;
        let [a, b, c, d] = self.0.map(u64::from);
        let [e, f, g, h] = other.0.map(u64::from);
        Mat2([
            ((a * e + b * g) % q) as u32,
            ((a * f + b * h) % q) as u32,
            ((c * e + d * g) % q) as u32,
            ((c * f + d * h) % q) as u32,
        ])
    }

    pub fn det(&self, modulus: u32) -> u32 {
        let q = modulus as u64;
        let [a, b, c, d] = self.0.map(u64::from);
        ((a * d % q + q - b * c % q) % q) as u32
    }

    /// Inverse of a determinant-one matrix (the adjugate).
    pub fn inv_special(&self, modulus: u32) -> Mat2 {
        let [a, b, c, d] = self.0;
        let neg = |x: u32| if x == 0 { 0 } else { modulus - x };
        Mat2([d, neg(b), neg(c), a])
    }

    #[inline]
    pub fn pack(&self) -> u64 {
        let [a, b, c, d] = self.0;
        a as u64 | (b as u64) << 16 | (c as u64) << 32 | (d as u64) << 48
    }

    #[inline]
    pub fn unpack(key: u64) -> Self {
        Mat2(Quaternion::unpack(key).0)
    }
}

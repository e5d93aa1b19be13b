//! Concrete ambient monoids used by the constructors.

use std::sync::Arc;

use crate::group::{Ambient, GroupTable};
use crate::ring::{Mat2, Quaternion, QuaternionAlgebra};

/// Units of a quaternion algebra, keyed by packed coordinates.
#[derive(Debug, Clone)]
pub struct QuatAmbient {
    pub alg: QuaternionAlgebra,
}

impl Ambient for QuatAmbient {
    fn identity(&self) -> u64 {
        self.alg.one().pack()
    }

    fn mul(&self, a: u64, b: u64) -> u64 {
        self.alg.mul(Quaternion::unpack(a), Quaternion::unpack(b)).pack()
    }

    fn inv(&self, a: u64) -> u64 {
        let x = Quaternion::unpack(a);
        self.alg.inverse(x).expect("unit quaternion").pack()
    }

    fn format(&self, key: u64) -> String {
        let [a, b, c, d] = Quaternion::unpack(key).0;
        format!("({a}, {b}, {c}, {d})")
    }
}

/// Determinant-one 2×2 matrices over `ℤ/modulus`.
#[derive(Debug, Clone)]
pub struct Mat2Ambient {
    pub modulus: u32,
}

impl Ambient for Mat2Ambient {
    fn identity(&self) -> u64 {
        Mat2::IDENTITY.pack()
    }

    fn mul(&self, a: u64, b: u64) -> u64 {
        Mat2::unpack(a).mul(&Mat2::unpack(b), self.modulus).pack()
    }

    fn inv(&self, a: u64) -> u64 {
        Mat2::unpack(a).inv_special(self.modulus).pack()
    }

    fn format(&self, key: u64) -> String {
        let [a, b, c, d] = Mat2::unpack(key).0;
        format!("[[{a}, {b}], [{c}, {d}]]")
    }
}

/// `⊕ ℤ/m_i`, packed in mixed radix.
#[derive(Debug, Clone)]
pub struct AbelianAmbient {
    moduli: Vec<u64>,
}

impl AbelianAmbient {
    pub fn new(moduli: Vec<u64>) -> Self {
        Self { moduli }
    }

    pub fn unit(&self, i: usize) -> u64 {
        self.moduli[..i].iter().product()
    }

    fn digits(&self, mut key: u64) -> Vec<u64> {
        self.moduli
            .iter()
            .map(|&m| {
                let d = key % m;
                key /= m;
                d
            })
            .collect()
    }

    fn pack(&self, digits: impl Iterator<Item = u64>) -> u64 {
        let mut key = 0;
        let mut base = 1;
        for (d, &m) in digits.zip(&self.moduli) {
            key += d * base;
            base *= m;
        }
        key
    }
}

impl Ambient for AbelianAmbient {
    fn identity(&self) -> u64 {
        0
    }

    fn mul(&self, a: u64, b: u64) -> u64 {
        let (da, db) = (self.digits(a), self.digits(b));
        self.pack(da.iter().zip(&db).zip(&self.moduli).map(|((x, y), m)| (x + y) % m))
    }

    fn inv(&self, a: u64) -> u64 {
        self.pack(self.digits(a).iter().zip(&self.moduli).map(|(x, m)| (m - x) % m))
    }

    fn format(&self, key: u64) -> String {
        format!("{:?}", self.digits(key))
    }
}

/// `G(Z, Y, X, θ)` with `Z = 𝔽_p`, `X = Y = 𝔽_p^n` and `θ(x, y) = Σ x_i y_i`:
/// `(z, y, x)(z', y', x') = (z + z' + θ(x, y'), y + y', x + x')`.
#[derive(Debug, Clone)]
pub struct HeisenbergAmbient {
    pub p: u64,
    pub n: usize,
}

impl HeisenbergAmbient {
    /// Coordinates `(z, y, x)` of a key.
    pub fn unpack(&self, mut key: u64) -> (u64, Vec<u64>, Vec<u64>) {
        let p = self.p;
        let z = key % p;
        key /= p;
        let mut y = Vec::with_capacity(self.n);
        for _ in 0..self.n {
            y.push(key % p);
            key /= p;
        }
        let mut x = Vec::with_capacity(self.n);
        for _ in 0..self.n {
            x.push(key % p);
            key /= p;
        }
        (z, y, x)
    }

    pub fn pack(&self, z: u64, y: &[u64], x: &[u64]) -> u64 {
        let p = self.p;
        let mut key = 0;
        for &c in x.iter().rev().chain(y.iter().rev()) {
            key = key * p + c % p;
        }
        key * p + z % p
    }

    fn theta(&self, x: &[u64], y: &[u64]) -> u64 {
        x.iter().zip(y).map(|(a, b)| a * b).sum::<u64>() % self.p
    }
}

impl Ambient for HeisenbergAmbient {
    fn identity(&self) -> u64 {
        0
    }

    fn mul(&self, a: u64, b: u64) -> u64 {
        let p = self.p;
        let (z1, y1, x1) = self.unpack(a);
        let (z2, y2, x2) = self.unpack(b);
        let z = (z1 + z2 + self.theta(&x1, &y2)) % p;
        let y: Vec<u64> = y1.iter().zip(&y2).map(|(s, t)| (s + t) % p).collect();
        let x: Vec<u64> = x1.iter().zip(&x2).map(|(s, t)| (s + t) % p).collect();
        self.pack(z, &y, &x)
    }

    fn inv(&self, a: u64) -> u64 {
        let p = self.p;
        let (z, y, x) = self.unpack(a);
        let zi = (p - z + self.theta(&x, &y)) % p;
        let neg = |v: &[u64]| v.iter().map(|c| (p - c) % p).collect::<Vec<_>>();
        self.pack(zi, &neg(&y), &neg(&x))
    }

    fn format(&self, key: u64) -> String {
        let (z, y, x) = self.unpack(key);
        format!("(z={z}, y={y:?}, x={x:?})")
    }
}

/// `ℤ/n ⋊ ℤ/m`, `(a, b)(a', b') = (a + u^b a', b + b')`, key `a + n b`.
#[derive(Debug, Clone)]
pub struct SemidirectAmbient {
    pub n: u64,
    pub m: u64,
    pub u: u64,
}

impl SemidirectAmbient {
    fn upow(&self, e: u64) -> u64 {
        let mut acc = 1 % self.n;
        for _ in 0..e {
            acc = acc * self.u % self.n;
        }
        acc
    }
}

impl Ambient for SemidirectAmbient {
    fn identity(&self) -> u64 {
        0
    }

    fn mul(&self, x: u64, y: u64) -> u64 {
        let (a, b) = (x % self.n, x / self.n);
        let (c, d) = (y % self.n, y / self.n);
        (a + self.upow(b) * c) % self.n + ((b + d) % self.m) * self.n
    }

    fn inv(&self, x: u64) -> u64 {
        let (a, b) = (x % self.n, x / self.n);
        let bi = (self.m - b) % self.m;
        let a_inv = (self.n - self.upow(bi) * a % self.n) % self.n;
        a_inv + bi * self.n
    }

    fn format(&self, key: u64) -> String {
        format!("({}, {})", key % self.n, key / self.n)
    }
}

/// Direct product of already interned groups, keyed by mixed-radix indices.
#[derive(Debug, Clone)]
pub struct ProductAmbient {
    pub factors: Vec<Arc<GroupTable>>,
}

impl ProductAmbient {
    fn split(&self, mut key: u64) -> Vec<u32> {
        self.factors
            .iter()
            .map(|g| {
                let n = g.order() as u64;
                let d = key % n;
                key /= n;
                d as u32
            })
            .collect()
    }

    pub fn join(&self, parts: &[u32]) -> u64 {
        let mut key = 0;
        let mut base = 1;
        for (g, &d) in self.factors.iter().zip(parts) {
            key += d as u64 * base;
            base *= g.order() as u64;
        }
        key
    }
}

impl Ambient for ProductAmbient {
    fn identity(&self) -> u64 {
        0
    }

    fn mul(&self, a: u64, b: u64) -> u64 {
        let (x, y) = (self.split(a), self.split(b));
        let parts: Vec<u32> = self.factors.iter().zip(x.iter().zip(&y)).map(|(g, (&s, &t))| g.mul(s, t)).collect();
        self.join(&parts)
    }

    fn inv(&self, a: u64) -> u64 {
        let parts: Vec<u32> = self.factors.iter().zip(self.split(a)).map(|(g, s)| g.inv(s)).collect();
        self.join(&parts)
    }

    fn format(&self, key: u64) -> String {
        let parts: Vec<String> = self.factors.iter().zip(self.split(key)).map(|(g, s)| g.format_element(s)).collect();
        format!("({})", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn heisenberg_pack_round_trip() {
        let h = HeisenbergAmbient { p: 5, n: 2 };
        for key in 0..5u64.pow(5) {
            let (z, y, x) = h.unpack(key);
            assert_eq!(h.pack(z, &y, &x), key);
            assert_eq!(h.mul(key, h.inv(key)), 0);
            assert_eq!(h.mul(h.inv(key), key), 0);
        }
    }

    #[test]
    fn semidirect_inverse() {
        let s = SemidirectAmbient { n: 25, m: 5, u: 6 };
        for key in 0..125 {
            assert_eq!(s.mul(key, s.inv(key)), 0);
            assert_eq!(s.mul(s.inv(key), key), 0);
        }
    }

    #[test]
    fn abelian_mixed_radix() {
        let a = AbelianAmbient::new(vec![9, 3]);
        assert_eq!(a.unit(1), 9);
        assert_eq!(a.mul(8, 1), 0);
        assert_eq!(a.mul(a.unit(1), a.unit(1)), 18);
        assert_eq!(a.inv(10), 8 + 2 * 9);
    }
}

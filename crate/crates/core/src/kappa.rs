//! κ-structures on the plane `V = 𝔽₃²`, the 9-element subfields of `End(V)`,
//! and the Λ-maps on `𝔽₉ = 𝔽₃[i]/(i² + 1)`.
//!
//! `V ⊗ ∧²V` is identified with `V` through `e₁ ∧ e₂ ↦ 1`, so a κ-structure is
//! a bijection `κ: V → V` with `κ(x + y) = κ(x) + κ(y) + det(x, y)(x − y)`.
//! The field structure on `V` sends `e₁ ↦ 1` and `e₂ ↦ i`.

use serde::Serialize;

use crate::error::{Error, Result};

/// A vector of `𝔽₃²`, also read as `a + b·i ∈ 𝔽₉`.
pub type Vec2 = [u8; 2];

/// 2×2 matrix over `𝔽₃`, row major, acting on column vectors.
pub type Mat = [u8; 4];

fn m3(x: i32) -> u8 {
    x.rem_euclid(3) as u8
}

pub fn add(x: Vec2, y: Vec2) -> Vec2 {
    [(x[0] + y[0]) % 3, (x[1] + y[1]) % 3]
}

pub fn neg(x: Vec2) -> Vec2 {
    [(3 - x[0]) % 3, (3 - x[1]) % 3]
}

pub fn sub(x: Vec2, y: Vec2) -> Vec2 {
    add(x, neg(y))
}

pub fn scale(c: u8, x: Vec2) -> Vec2 {
    [(c * x[0]) % 3, (c * x[1]) % 3]
}

/// `x ∧ y` as an element of `𝔽₃`.
pub fn wedge(x: Vec2, y: Vec2) -> u8 {
    m3(x[0] as i32 * y[1] as i32 - x[1] as i32 * y[0] as i32)
}

/// Product in `𝔽₉` with `i² = −1`.
pub fn f9_mul(x: Vec2, y: Vec2) -> Vec2 {
    let (a, b, c, d) = (x[0] as i32, x[1] as i32, y[0] as i32, y[1] as i32);
    [m3(a * c - b * d), m3(a * d + b * c)]
}

pub fn f9_pow(x: Vec2, e: u32) -> Vec2 {
    (0..e).fold([1, 0], |acc, _| f9_mul(acc, x))
}

pub fn apply(m: Mat, x: Vec2) -> Vec2 {
    [(m[0] * x[0] + m[1] * x[1]) % 3, (m[2] * x[0] + m[3] * x[1]) % 3]
}

fn mat_mul(a: Mat, b: Mat) -> Mat {
    let e = |r: usize, c: usize| (a[2 * r] * b[c] + a[2 * r + 1] * b[2 + c]) % 3;
    [e(0, 0), e(0, 1), e(1, 0), e(1, 1)]
}

pub fn index(x: Vec2) -> usize {
    x[0] as usize + 3 * x[1] as usize
}

pub fn vector(i: usize) -> Vec2 {
    [(i % 3) as u8, (i / 3) as u8]
}

fn all_vectors() -> impl Iterator<Item = Vec2> {
    (0..9).map(vector)
}

const E1: Vec2 = [1, 0];
const E2: Vec2 = [0, 1];
const MINUS_ONE: Mat = [2, 0, 0, 2];

/// A map `V → V` stored as its table indexed by [`index`].
pub type Table = [Vec2; 9];

fn is_bijective(t: &Table) -> bool {
    let mut seen = [false; 9];
    t.iter().all(|&y| !std::mem::replace(&mut seen[index(y)], true))
}

/// A 9-element subfield `𝔽₃[J]` of `End(V)`, with `J² = −1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Subfield {
    /// The root of `−1` with the smaller encoding; the other one is `−J`.
    pub root: Mat,
    pub members: Vec<Mat>,
}

impl Subfield {
    fn from_root(j: Mat) -> Self {
        let neg_j = j.map(|c| (3 - c) % 3);
        let root = j.min(neg_j);
        let mut members: Vec<Mat> = (0..3u8)
            .flat_map(|a| (0..3u8).map(move |b| (a, b)))
            .map(|(a, b)| {
                let mut m = root.map(|c| (b * c) % 3);
                m[0] = (m[0] + a) % 3;
                m[3] = (m[3] + a) % 3;
                m
            })
            .collect();
        members.sort_unstable();
        Self { root, members }
    }

    /// Whether the nonzero members form a cyclic group of order 8.
    pub fn units_cyclic(&self) -> bool {
        let one: Mat = [1, 0, 0, 1];
        self.members.iter().filter(|&&m| m != [0; 4]).any(|&g| {
            let mut cur = g;
            let mut k = 1;
            while cur != one {
                cur = mat_mul(cur, g);
                k += 1;
            }
            k == 8
        })
    }
}

/// All `J ∈ End(V)` with `J² = −1`, in encoding order.
pub fn square_roots_of_minus_one() -> Vec<Mat> {
    (0..81u32)
        .map(|c| [(c % 3) as u8, (c / 3 % 3) as u8, (c / 9 % 3) as u8, (c / 27) as u8])
        .filter(|&j| mat_mul(j, j) == MINUS_ONE)
        .collect()
}

pub fn enumerate_subfields() -> Vec<Subfield> {
    let mut out: Vec<Subfield> = Vec::new();
    for j in square_roots_of_minus_one() {
        let f = Subfield::from_root(j);
        if !out.contains(&f) {
            out.push(f);
        }
    }
    out
}

/// The correction term of the first axiom, `(x − y) ⊗ (x ∧ y)`.
fn a1_term(x: Vec2, y: Vec2) -> Vec2 {
    scale(wedge(x, y), sub(x, y))
}

/// The correction term of the second axiom, `(x − y)(xy³ − x³y)`.
fn a2_term(x: Vec2, y: Vec2) -> Vec2 {
    let w = sub(f9_mul(x, f9_pow(y, 3)), f9_mul(f9_pow(x, 3), y));
    f9_mul(sub(x, y), w)
}

/// Extend `f` from its values on `e₁, e₂` by `f(x + y) = f(x) + f(y) + term(x, y)`,
/// adding `e₁` first and then `e₂`, or the other way round.
fn propagate(v1: Vec2, v2: Vec2, term: fn(Vec2, Vec2) -> Vec2, e1_first: bool) -> Table {
    let mut t = [[0u8; 2]; 9];
    let steps: [(Vec2, Vec2); 2] = if e1_first { [(E1, v1), (E2, v2)] } else { [(E2, v2), (E1, v1)] };
    let mut x = [0u8; 2];
    let mut fx = [0u8; 2];
    let (outer, inner) = (steps[0], steps[1]);
    for a in 0..3 {
        let (mut y, mut fy) = (x, fx);
        for b in 0..3 {
            t[index(y)] = fy;
            if b < 2 {
                fy = add(add(fy, inner.1), term(y, inner.0));
                y = add(y, inner.0);
            }
        }
        if a < 2 {
            fx = add(add(fx, outer.1), term(x, outer.0));
            x = add(x, outer.0);
        }
    }
    t
}

fn satisfies(t: &Table, term: fn(Vec2, Vec2) -> Vec2) -> bool {
    all_vectors().all(|x| all_vectors().all(|y| t[index(add(x, y))] == add(add(t[index(x)], t[index(y)]), term(x, y))))
}

/// Bijective solutions of `f(x + y) = f(x) + f(y) + term(x, y)` over the 81
/// choices of `(f(e₁), f(e₂))`. Each is checked to be independent of the
/// propagation order and to satisfy the axiom on all 81 pairs.
fn solve(term: fn(Vec2, Vec2) -> Vec2) -> Result<Vec<Table>> {
    let mut out = Vec::new();
    for v1 in all_vectors() {
        for v2 in all_vectors() {
            let t = propagate(v1, v2, term, true);
            let ok = satisfies(&t, term);
            if ok && propagate(v1, v2, term, false) != t {
                return Err(Error::Consistency("propagation depends on the addition chain".into()));
            }
            if ok && is_bijective(&t) {
                out.push(t);
            }
        }
    }
    Ok(out)
}

pub fn enumerate_kappa_structures() -> Result<Vec<Table>> {
    solve(a1_term)
}

pub fn enumerate_lambda_maps() -> Result<Vec<Table>> {
    solve(a2_term)
}

pub fn is_kappa_structure(t: &Table) -> bool {
    is_bijective(t) && satisfies(t, a1_term)
}

pub fn is_lambda_map(t: &Table) -> bool {
    is_bijective(t) && satisfies(t, a2_term)
}

fn table(f: impl Fn(Vec2) -> Vec2) -> Table {
    let mut t = [[0u8; 2]; 9];
    for x in all_vectors() {
        t[index(x)] = f(x);
    }
    t
}

/// `x ↦ Jx ⊗ (Jx ∧ x)`.
pub fn s_v(k: &Subfield) -> Table {
    table(|x| {
        let jx = apply(k.root, x);
        scale(wedge(jx, x), jx)
    })
}

/// `μ ∘ θ ∘ κ`. Since `θ(a ⊗ (e₁ ∧ e₂)) = a ⊗ (1·i³ − 1³·i) = a ⊗ i`, this is `x ↦ i·κ(x)`.
pub fn l_v(kappa: &Table) -> Table {
    table(|x| f9_mul(E2, kappa[index(x)]))
}

/// `x ↦ Jx((Jx)x³ − (Jx)³x)`, computed in `𝔽₉` with `J` acting linearly.
pub fn sigma_v(k: &Subfield) -> Table {
    table(|x| {
        let jx = apply(k.root, x);
        f9_mul(jx, sub(f9_mul(jx, f9_pow(x, 3)), f9_mul(f9_pow(jx, 3), x)))
    })
}

/// `b` with `λ(x) = x⁵ + bx` for all `x`, if one exists.
pub fn quintic_shift(lambda: &Table) -> Option<Vec2> {
    all_vectors().find(|&b| all_vectors().all(|x| lambda[index(x)] == add(f9_pow(x, 5), f9_mul(b, x))))
}

/// Matrix of multiplication by `i` on `𝔽₉` in the basis `(1, i)`.
pub const MUL_BY_I: Mat = [0, 2, 1, 0];

#[derive(Clone, Debug, Serialize)]
pub struct KappaCertificate {
    pub subfields: Vec<Subfield>,
    pub kappa_structures: Vec<Table>,
    pub lambda_maps: Vec<Table>,
    /// `s_V(subfields[i]) = kappa_structures[s_v[i]]`.
    pub s_v: Vec<usize>,
    /// `l_V(kappa_structures[i]) = lambda_maps[l_v[i]]`.
    pub l_v: Vec<usize>,
    /// `b` with `λ(x) = x⁵ + bx`, per Λ-map.
    pub quintic_shifts: Vec<Option<Vec2>>,
    pub units_cyclic: bool,
    pub kappa_odd: bool,
    pub s_v_bijective: bool,
    pub l_v_bijective: bool,
    pub sigma_factors: bool,
    pub shifts_valid: bool,
    pub quintic_present: bool,
    pub sigma_of_i_is_quintic: bool,
}

impl KappaCertificate {
    pub fn compute() -> Result<Self> {
        let subfields = enumerate_subfields();
        let kappa_structures = enumerate_kappa_structures()?;
        let lambda_maps = enumerate_lambda_maps()?;
        let position = |list: &[Table], t: &Table| list.iter().position(|u| u == t);
        let s_v_images: Vec<Option<usize>> = subfields.iter().map(|k| position(&kappa_structures, &s_v(k))).collect();
        let l_v_images: Vec<Option<usize>> = kappa_structures.iter().map(|k| position(&lambda_maps, &l_v(k))).collect();
        let bijective = |images: &[Option<usize>], target: usize| {
            let mut v: Vec<usize> = images.iter().flatten().copied().collect();
            v.sort_unstable();
            v.dedup();
            images.len() == target && v.len() == target && images.iter().all(Option::is_some)
        };
        let s_v_bijective = bijective(&s_v_images, kappa_structures.len());
        let l_v_bijective = bijective(&l_v_images, lambda_maps.len());
        let quintic = table(|x| f9_pow(x, 5));
        let quintic_shifts: Vec<Option<Vec2>> = lambda_maps.iter().map(quintic_shift).collect();
        let shifts_valid =
            quintic_shifts.iter().all(|b| b.is_some_and(|b| f9_mul(b, add([1, 0], f9_mul(b, b))) == [0, 0]));
        let kappa_odd = kappa_structures.iter().all(|k| all_vectors().all(|x| k[index(neg(x))] == neg(k[index(x)])));
        let sigma_factors = subfields.iter().all(|k| l_v(&s_v(k)) == sigma_v(k));
        let i_field = Subfield::from_root(MUL_BY_I);
        Ok(Self {
            units_cyclic: subfields.iter().all(Subfield::units_cyclic),
            sigma_of_i_is_quintic: subfields.contains(&i_field) && sigma_v(&i_field) == quintic,
            quintic_present: lambda_maps.contains(&quintic),
            s_v: s_v_images.into_iter().map(|i| i.unwrap_or(usize::MAX)).collect(),
            l_v: l_v_images.into_iter().map(|i| i.unwrap_or(usize::MAX)).collect(),
            subfields,
            kappa_structures,
            lambda_maps,
            quintic_shifts,
            kappa_odd,
            s_v_bijective,
            l_v_bijective,
            sigma_factors,
            shifts_valid,
        })
    }

    /// All counts equal 3 and every recorded check holds.
    pub fn holds(&self) -> bool {
        self.subfields.len() == 3
            && self.kappa_structures.len() == 3
            && self.lambda_maps.len() == 3
            && self.units_cyclic
            && self.kappa_odd
            && self.s_v_bijective
            && self.l_v_bijective
            && self.sigma_factors
            && self.shifts_valid
            && self.quintic_present
            && self.sigma_of_i_is_quintic
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f9_is_a_field() {
        for x in all_vectors().skip(1) {
            assert!(all_vectors().any(|y| f9_mul(x, y) == [1, 0]));
            assert_eq!(f9_pow(x, 8), [1, 0]);
        }
        assert_eq!(f9_mul(E2, E2), [2, 0]);
    }

    #[test]
    fn wedge_is_alternating() {
        for x in all_vectors() {
            assert_eq!(wedge(x, x), 0);
            for y in all_vectors() {
                assert_eq!(wedge(x, y), (3 - wedge(y, x)) % 3);
            }
        }
        assert_eq!(wedge(E1, E2), 1);
    }

    #[test]
    fn theta_matches_wedge() {
        // xy³ − x³y = (x ∧ y)·i
        for x in all_vectors() {
            for y in all_vectors() {
                let w = sub(f9_mul(x, f9_pow(y, 3)), f9_mul(f9_pow(x, 3), y));
                assert_eq!(w, scale(wedge(x, y), E2));
            }
        }
    }

    #[test]
    fn subfields_and_roots() {
        let roots = square_roots_of_minus_one();
        assert_eq!(roots.len(), 6);
        let fields = enumerate_subfields();
        assert_eq!(fields.len(), 3);
        for j in roots {
            let neg_j = j.map(|c| (3 - c) % 3);
            assert_eq!(Subfield::from_root(j), Subfield::from_root(neg_j));
        }
    }

    #[test]
    fn s_v_outputs_are_kappa_structures() {
        for k in enumerate_subfields() {
            let t = s_v(&k);
            assert!(is_kappa_structure(&t));
            assert_eq!(t[0], [0, 0]);
        }
    }

    #[test]
    fn certificate_holds() {
        let c = KappaCertificate::compute().unwrap();
        assert!(c.holds(), "{c:?}");
        let mut shifts: Vec<Vec2> = c.quintic_shifts.iter().flatten().copied().collect();
        shifts.sort_unstable();
        assert_eq!(shifts, vec![[0, 0], [0, 1], [0, 2]]);
    }
}

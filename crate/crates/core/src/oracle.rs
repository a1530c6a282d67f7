//! Class groups of imaginary quadratic orders from reduced binary quadratic
//! forms and Dirichlet composition. Used as ground truth for genus-theory
//! rank bounds and mean exponents.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::arith::factor_u64;
use crate::error::{Error, Result};
use crate::groups::AbelianPShape;

/// `a x² + b x y + c y²`
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QuadForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        if a < 0 {
            (-a, -1, 0)
        } else {
            (a, 1, 0)
        }
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl QuadForm {
    pub fn new(a: i64, b: i64, c: i64) -> Self {
        Self { a, b, c }
    }

    pub fn discriminant(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    pub fn is_primitive(&self) -> bool {
        gcd(gcd(self.a, self.b), self.c) == 1
    }

    pub fn is_reduced(&self) -> bool {
        let QuadForm { a, b, c } = *self;
        b.abs() <= a && a <= c && !((b.abs() == a || a == c) && b < 0)
    }

    /// The principal form of discriminant `d`.
    pub fn identity(d: i64) -> Result<Self> {
        check_disc(d)?;
        let b = d.rem_euclid(2);
        Ok(Self::new(1, b, (b * b - d) / 4))
    }

    /// Reduced representative of the proper equivalence class.
    pub fn reduce(self) -> Self {
        let QuadForm { mut a, mut b, mut c } = self;
        loop {
            if b.abs() > a {
                // b ← b mod 2a into (−a, a]
                let two_a = 2 * a;
                let mut nb = b.rem_euclid(two_a);
                if nb > a {
                    nb -= two_a;
                }
                let k = (nb - b) / two_a;
                // x → x + k y
                c += a * k * k + b * k;
                b = nb;
            }
            if a > c {
                (a, c) = (c, a);
                b = -b;
                continue;
            }
            if b.abs() > a {
                continue;
            }
            if (a == c || b == -a) && b < 0 {
                b = -b;
            }
            return Self { a, b, c };
        }
    }

    pub fn inverse(self) -> Self {
        Self::new(self.a, -self.b, self.c).reduce()
    }

    /// Dirichlet composition, followed by reduction.
    pub fn compose(self, other: Self) -> Result<Self> {
        let d = self.discriminant();
        if other.discriminant() != d {
            return Err(Error::Domain(format!(
                "composing forms of discriminants {d} and {}",
                other.discriminant()
            )));
        }
        let (f1, f2) = if self.a > other.a { (other, self) } else { (self, other) };
        let (a1, b1) = (f1.a as i128, f1.b as i128);
        let (a2, b2, c2) = (f2.a as i128, f2.b as i128, f2.c as i128);
        let s = (b1 + b2) / 2;
        let n = b2 - s;
        let (dd, y1) = if a2 % a1 == 0 {
            (a1, 0)
        } else {
            let (g, u, _) = ext_gcd(a2, a1);
            (g, u)
        };
        let (d1, x2, y2) = if s % dd == 0 {
            (dd, 0, -1)
        } else {
            let (g, x, y) = ext_gcd(s, dd);
            (g, x, -y)
        };
        let v1 = a1 / d1;
        let v2 = a2 / d1;
        let r = (y1 * y2 * n - x2 * c2).rem_euclid(v1);
        let b3 = b2 + 2 * v2 * r;
        let a3 = v1 * v2;
        let num = b3 * b3 - d as i128;
        if num % (4 * a3) != 0 {
            return Err(Error::Internal(format!(
                "composition of {self:?} and {other:?} produced a non-integral form"
            )));
        }
        let c3 = num / (4 * a3);
        let conv = |x: i128| {
            i64::try_from(x).map_err(|_| Error::Range("composition overflowed i64".into()))
        };
        Ok(Self::new(conv(a3)?, conv(b3)?, conv(c3)?).reduce())
    }

    /// Image under `(x, y) ↦ (p x + q y, r x + s y)`.
    pub fn transform(self, p: i64, q: i64, r: i64, s: i64) -> Self {
        let QuadForm { a, b, c } = self;
        Self::new(
            a * p * p + b * p * r + c * r * r,
            2 * a * p * q + b * (p * s + q * r) + 2 * c * r * s,
            a * q * q + b * q * s + c * s * s,
        )
    }

    pub fn pow(self, mut e: u64) -> Result<Self> {
        let mut base = self;
        let mut acc = Self::identity(self.discriminant())?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(base)?;
            }
            base = base.compose(base)?;
            e >>= 1;
        }
        Ok(acc)
    }
}

fn check_disc(d: i64) -> Result<()> {
    if d >= 0 || !(d.rem_euclid(4) == 0 || d.rem_euclid(4) == 1) {
        return Err(Error::Domain(format!(
            "{d} is not a negative discriminant (≡ 0, 1 mod 4)"
        )));
    }
    Ok(())
}

/// Desk-scale bound on |D|.
pub const MAX_ABS_DISC: i64 = 1_000_000;

/// All reduced primitive forms of discriminant `d`.
pub fn reduced_forms(d: i64) -> Result<Vec<QuadForm>> {
    check_disc(d)?;
    let mut out = Vec::new();
    let mut b = d.rem_euclid(2);
    while 3 * b * b <= -d {
        let ac = (b * b - d) / 4;
        let mut a = b.max(1);
        while a * a <= ac {
            if ac % a == 0 {
                let c = ac / a;
                for f in [QuadForm::new(a, b, c), QuadForm::new(a, -b, c)] {
                    if f.is_reduced() && f.is_primitive() && !out.contains(&f) {
                        out.push(f);
                    }
                }
            }
            a += 1;
        }
        b += 2;
    }
    out.sort();
    Ok(out)
}

pub fn class_number(d: i64) -> Result<usize> {
    Ok(reduced_forms(d)?.len())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassGroup {
    pub disc: i64,
    pub h: u64,
    pub sylow: BTreeMap<u64, AbelianPShape>,
    pub ambiguous_classes: u64,
}

impl ClassGroup {
    /// The p-Sylow subgroup, trivial when p ∤ h.
    pub fn sylow(&self, p: u64) -> Result<AbelianPShape> {
        match self.sylow.get(&p) {
            Some(s) => Ok(s.clone()),
            None => AbelianPShape::trivial(p),
        }
    }

    pub fn p_rank(&self, p: u64) -> usize {
        self.sylow.get(&p).map_or(0, |s| s.rank())
    }
}

/// Number of generic characters `μ` for forms of discriminant `d`; there
/// are `2^{μ−1}` genera and as many ambiguous classes.
pub fn genus_character_count(d: i64) -> Result<u32> {
    check_disc(d)?;
    let odd_primes = |n: u64| factor_u64(n).iter().filter(|(p, _)| *p != 2).count() as u32;
    if d.rem_euclid(4) == 1 {
        return Ok(odd_primes(d.unsigned_abs()));
    }
    let n = (-d / 4) as u64;
    let r = odd_primes(n);
    Ok(match n % 8 {
        3 | 7 => r,
        1 | 2 | 5 | 6 | 4 => r + 1,
        0 => r + 2,
        _ => unreachable!(),
    })
}

/// Group structure by counting, for each `p | h`, the elements killed by `p^j`.
pub fn class_group_structure(d: i64) -> Result<ClassGroup> {
    if d.abs() > MAX_ABS_DISC {
        return Err(Error::Range(format!("|D| = {} exceeds {MAX_ABS_DISC}", d.abs())));
    }
    let forms = reduced_forms(d)?;
    let h = forms.len() as u64;
    let index: HashMap<QuadForm, usize> = forms.iter().enumerate().map(|(i, f)| (*f, i)).collect();
    let id = QuadForm::identity(d)?;
    self_test(&forms, &index)?;

    let mut sylow = BTreeMap::new();
    for (p, e) in factor_u64(h) {
        // killed[j] = |G[p^j]|
        let mut current: Vec<QuadForm> = forms.clone();
        let mut killed = vec![1u64];
        for _ in 0..e {
            current = current.iter().map(|f| f.pow(p)).collect::<Result<_>>()?;
            killed.push(current.iter().filter(|f| **f == id).count() as u64);
        }
        let mut levels = Vec::new();
        for j in 1..killed.len() {
            let ratio = killed[j] / killed[j - 1];
            let mut k = 0u32;
            let mut x = 1u64;
            while x < ratio {
                x *= p;
                k += 1;
            }
            if x != ratio || killed[j] % killed[j - 1] != 0 {
                return Err(Error::Internal(format!("p-torsion counts {killed:?} are not p-powers")));
            }
            levels.push(k);
        }
        // levels[j−1] = #{i : a_i ≥ j}
        let mut exps = Vec::new();
        for i in 0..levels[0] {
            exps.push(levels.iter().filter(|&&n| n > i).count() as u32);
        }
        let shape = AbelianPShape::new(p, exps)?;
        if shape.order_log() != e as u64 {
            return Err(Error::Internal(format!(
                "{p}-Sylow {shape:?} does not have order {p}^{e}"
            )));
        }
        sylow.insert(p, shape);
    }
    let ambiguous = forms
        .iter()
        .map(|f| f.compose(*f))
        .collect::<Result<Vec<_>>>()?
        .iter()
        .filter(|f| **f == id)
        .count() as u64;
    Ok(ClassGroup {
        disc: d,
        h,
        sylow,
        ambiguous_classes: ambiguous,
    })
}

/// Closure, identity, inverses and associativity on a deterministic sample.
fn self_test(forms: &[QuadForm], index: &HashMap<QuadForm, usize>) -> Result<()> {
    let Some(first) = forms.first() else {
        return Err(Error::Internal("no reduced forms".into()));
    };
    let id = QuadForm::identity(first.discriminant())?;
    let n = forms.len();
    let step = (n / 7).max(1);
    for i in (0..n).step_by(step) {
        let f = forms[i];
        if f.compose(id)? != f || f.compose(f.inverse())? != id {
            return Err(Error::Internal(format!("group law fails at {f:?}")));
        }
        for j in (0..n).step_by(step) {
            let g = forms[j];
            let fg = f.compose(g)?;
            if !index.contains_key(&fg) {
                return Err(Error::Internal(format!("{f:?}·{g:?} left the form set")));
            }
            for k in (0..n).step_by(step * 2) {
                let h = forms[k];
                if fg.compose(h)? != f.compose(g.compose(h)?)? {
                    return Err(Error::Internal("composition is not associative".into()));
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::towers::genus_rank_bound;
    use proptest::prelude::*;

    #[test]
    fn class_numbers() {
        assert_eq!(class_number(-23).unwrap(), 3);
        assert_eq!(class_number(-47).unwrap(), 5);
        assert_eq!(class_number(-4).unwrap(), 1);
        assert_eq!(class_number(-3).unwrap(), 1);
        assert_eq!(reduced_forms(-4).unwrap(), vec![QuadForm::new(1, 0, 1)]);
        assert_eq!(class_number(-1155).unwrap(), 8);
        assert_eq!(class_number(-4620).unwrap(), 24);
        assert!(reduced_forms(-5).is_err());
        assert!(reduced_forms(8).is_err());
    }

    #[test]
    fn structures() {
        let g = class_group_structure(-23).unwrap();
        assert_eq!(g.sylow(3).unwrap().exps, vec![1]);
        let g = class_group_structure(-3).unwrap();
        assert!(g.sylow(2).unwrap().is_trivial());
        assert!(g.sylow(5).unwrap().is_trivial());

        let g = class_group_structure(-1155).unwrap();
        assert_eq!(g.sylow(2).unwrap().exps, vec![1, 1, 1]);
        assert_eq!(g.p_rank(2) as i64, genus_rank_bound(5, 1, 0, 1));

        let g = class_group_structure(-4620).unwrap();
        assert_eq!(genus_character_count(-4620).unwrap(), 4);
        assert_eq!(g.ambiguous_classes, 8);
        assert_eq!(g.p_rank(2), 3);

        // Z/4 × Z/2 × ... : -260 has h = 8 with a cyclic factor of order 4
        let g = class_group_structure(-260).unwrap();
        assert_eq!(g.h, 8);
        assert_eq!(g.sylow(2).unwrap().exps, vec![2, 1]);
    }

    #[test]
    fn genus_counts() {
        assert_eq!(genus_character_count(-1155).unwrap(), 4);
        assert_eq!(genus_character_count(-4).unwrap(), 1);
        assert_eq!(genus_character_count(-20).unwrap(), 2);
        assert_eq!(genus_character_count(-32).unwrap(), 2);
    }

    #[test]
    fn reduction() {
        let f = QuadForm::new(1, 0, 1).transform(2, 1, 1, 1);
        assert_eq!(f.reduce(), QuadForm::new(1, 0, 1));
        for f in reduced_forms(-1155).unwrap() {
            assert_eq!(f.reduce(), f);
        }
    }

    fn small_disc() -> impl Strategy<Value = i64> {
        (3i64..25_000).prop_flat_map(|n| prop_oneof![Just(-4 * n), Just(-(4 * n + 3))])
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn representative_independence(d in small_disc(), i in 0usize..64, j in 0usize..64,
                                       p in -4i64..5, q in -4i64..5) {
            let forms = reduced_forms(d).unwrap();
            let f = forms[i % forms.len()];
            let g = forms[j % forms.len()];
            // build a unimodular matrix [[1, q], [p, 1 + p q]]
            let moved = f.transform(1, q, p, 1 + p * q);
            prop_assert_eq!(moved.reduce(), f);
            prop_assert_eq!(moved.compose(g).unwrap(), f.compose(g).unwrap());
        }

        #[test]
        fn group_laws(d in small_disc(), i in 0usize..64, j in 0usize..64, k in 0usize..64) {
            let forms = reduced_forms(d).unwrap();
            let pick = |x: usize| forms[x % forms.len()];
            let (f, g, h) = (pick(i), pick(j), pick(k));
            let id = QuadForm::identity(d).unwrap();
            prop_assert_eq!(f.compose(id).unwrap(), f);
            prop_assert_eq!(f.compose(f.inverse()).unwrap(), id);
            prop_assert_eq!(f.compose(g).unwrap(), g.compose(f).unwrap());
            prop_assert_eq!(
                f.compose(g).unwrap().compose(h).unwrap(),
                f.compose(g.compose(h).unwrap()).unwrap()
            );
        }

        #[test]
        fn structure_consistency(d in small_disc()) {
            let g = class_group_structure(d).unwrap();
            let order: u64 = g.sylow.values().map(|s| s.p.pow(s.order_log() as u32)).product();
            prop_assert_eq!(order, g.h);
            let mu = genus_character_count(d).unwrap();
            prop_assert_eq!(g.ambiguous_classes, 1u64 << (mu - 1));
            for s in g.sylow.values() {
                let m = s.mean_exponent();
                prop_assert!(m >= num_rational::Ratio::from_integer(1));
                prop_assert!(m <= num_rational::Ratio::from_integer(s.order_log()));
            }
        }
    }
}

//! Exterior algebra of Minkowski space: Hodge star, the `Com` bracket, and
//! Clifford multiplication defined from grade-pair formulas in terms of `^`
//! and the star.

use std::sync::LazyLock;
use serde::Serialize;

use crate::blade::Blade;
use crate::error::{Error, Result};
use crate::multivector::Multivector;
use crate::scalar::{Exact, Field, Scalar};

/// Minkowski metric `g^{mu nu} = g_{mu nu} = diag(1, -1, -1, -1)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MinkowskiMetric;

impl MinkowskiMetric {
    pub const DIAG: [i8; 4] = [1, -1, -1, -1];

    pub fn g(mu: usize, nu: usize) -> i8 {
        if mu == nu {
            Self::DIAG[mu]
        } else {
            0
        }
    }

    /// `u^mu = g^{mu nu} u_nu`.
    pub fn raise<F: Field>(lower: &[F; 4]) -> [F; 4] {
        std::array::from_fn(|mu| {
            if Self::DIAG[mu] < 0 {
                lower[mu].negated()
            } else {
                lower[mu].clone()
            }
        })
    }
}

/// Sign of the permutation `idx` of `(0,1,2,3)`, zero on repeated indices.
pub fn levi_civita(idx: [usize; 4]) -> i8 {
    let mut sign = 1;
    for i in 0..4 {
        for j in i + 1..4 {
            if idx[i] == idx[j] {
                return 0;
            }
            if idx[i] > idx[j] {
                sign = -sign;
            }
        }
    }
    sign
}

/// Sorts a list of distinct indices, returning the blade and the sign of the
/// sorting permutation.
fn sorted_blade(indices: &[usize]) -> (i8, Blade) {
    let mut v = indices.to_vec();
    let mut sign = 1i8;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    (sign, Blade::from_indices(&v).expect("distinct indices"))
}

fn permutations() -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    if levi_civita(p) != 0 {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

fn factorial(n: usize) -> i64 {
    (1..=n as i64).product()
}

/// Hodge star evaluated literally as
/// `1/(k!(4-k)!) eps_{m1..m4} u^{m1..mk} e^{m(k+1)} ^ ... ^ e^{m4}`
/// on each grade part.
pub fn hodge_star_direct<S: Scalar>(u: &Multivector<S>) -> Multivector<S> {
    let perms = permutations();
    let mut out = Multivector::<S>::zero();
    for (b, coeff) in u.terms() {
        let k = b.grade();
        let mut acc = S::zero();
        let mut target = None;
        for p in &perms {
            let (s1, lead) = sorted_blade(&p[..k]);
            if lead != b {
                continue;
            }
            let raise: i8 = p[..k].iter().map(|&m| MinkowskiMetric::DIAG[m]).product();
            let (s2, tail) = sorted_blade(&p[k..]);
            let sign = levi_civita(*p) * s1 * s2 * raise;
            acc = acc.plus(&S::from_i64(sign as i64));
            target = Some(tail);
        }
        let tail = target.expect("every blade appears in some permutation");
        let norm = S::from_i64(factorial(k) * factorial(4 - k));
        let value = acc.times(coeff).divided(&norm).expect("nonzero factorial");
        let slot = out.coeff(tail).plus(&value);
        out.set(tail, slot);
    }
    out
}

static STAR_TABLE: LazyLock<[(i8, Blade); 16]> = LazyLock::new(|| {
    std::array::from_fn(|mask| {
        let b = Blade::new(mask as u8).expect("mask < 16");
        let image = hodge_star_direct(&Multivector::<Exact>::blade(b));
        let (target, c) = image.terms().next().expect("star of a blade is nonzero");
        let sign = if *c == Exact::one() {
            1
        } else if *c == Exact::one().negated() {
            -1
        } else {
            panic!("star of a blade is not a signed blade")
        };
        (sign, target)
    })
});

/// `(sign, image)` with `*b = sign * image`.
pub fn star_of_blade(b: Blade) -> (i8, Blade) {
    STAR_TABLE[b.index()]
}

/// Hodge star via the memoized blade table.
pub fn hodge_star<S: Scalar>(u: &Multivector<S>) -> Multivector<S> {
    let mut out = Multivector::zero();
    for (b, c) in u.terms() {
        let (sign, target) = star_of_blade(b);
        out.set(target, if sign > 0 { c.clone() } else { c.negated() });
    }
    out
}

/// Bilinear `Com` bracket of two 2-forms.
pub fn com_bracket<S: Scalar>(u: &Multivector<S>, v: &Multivector<S>) -> Result<Multivector<S>> {
    for (name, x) in [("first", u), ("second", v)] {
        if !x.terms().all(|(b, _)| b.grade() == 2) {
            return Err(Error::domain(format!("Com needs 2-forms; {name} argument has other grades")));
        }
    }
    let mut out = Multivector::zero();
    for (a, x) in u.terms() {
        for (b, y) in v.terms() {
            let coeff = x.times(y);
            let basis = com_basis(a, b);
            out = out.add(&basis.scale(&coeff));
        }
    }
    Ok(out)
}

/// `Com(e^{m1}^e^{m2}, e^{n1}^e^{n2})` from the defining four-term formula.
fn com_basis<S: Scalar>(a: Blade, b: Blade) -> Multivector<S> {
    let [m1, m2] = <[usize; 2]>::try_from(a.indices()).expect("grade 2");
    let [n1, n2] = <[usize; 2]>::try_from(b.indices()).expect("grade 2");
    let wedge = |p: usize, q: usize| -> Multivector<S> {
        Multivector::basis_vector(p).wedge(&Multivector::basis_vector(q))
    };
    let g = |p: usize, q: usize| S::from_i64(MinkowskiMetric::g(p, q) as i64);
    let two = S::from_i64(2);
    let terms = [
        (g(m1, n1).times(&two).negated(), wedge(m2, n2)),
        (g(m2, n2).times(&two).negated(), wedge(m1, n1)),
        (g(m1, n2).times(&two), wedge(m2, n1)),
        (g(m2, n1).times(&two), wedge(m1, n2)),
    ];
    terms
        .iter()
        .fold(Multivector::zero(), |acc, (c, w)| acc.add(&w.scale(c)))
}

/// The grade-pair formulas defining Clifford multiplication of forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum TableRule {
    /// `0U kV = 0U ^ kV`
    ScalarLeft,
    /// `kV 0U = kV ^ 0U`
    ScalarRight,
    /// `1U kV = 1U ^ kV - *(1U ^ *kV)`
    VectorLeft,
    /// `kU 1V = kU ^ 1V + *(*kU ^ 1V)`
    VectorRight,
    /// `2U 2V = 2U ^ 2V + *(2U ^ *2V) + Com(2U, 2V)/2`
    TwoTwo,
    /// `2U 3V = *2U ^ *3V - *(2U ^ *3V)`
    TwoThree,
    /// `2U 4V = *2U ^ *4V`
    TwoFour,
    /// `3U 2V = -*3U ^ *2V - *(*3U ^ 2V)`
    ThreeTwo,
    /// `3U 3V = *3U ^ *3V + *(3U ^ *3V)`
    ThreeThree,
    /// `3U 4V = *3U ^ *4V`
    ThreeFour,
    /// `4U 2V = *4U ^ *2V`
    FourTwo,
    /// `4U 3V = -*4U ^ *3V`
    FourThree,
    /// `4U 4V = -*4U ^ *4V`
    FourFour,
}

impl TableRule {
    pub const ALL: [TableRule; 13] = [
        TableRule::ScalarLeft,
        TableRule::ScalarRight,
        TableRule::VectorLeft,
        TableRule::VectorRight,
        TableRule::TwoTwo,
        TableRule::TwoThree,
        TableRule::TwoFour,
        TableRule::ThreeTwo,
        TableRule::ThreeThree,
        TableRule::ThreeFour,
        TableRule::FourTwo,
        TableRule::FourThree,
        TableRule::FourFour,
    ];

    pub fn applies(self, j: usize, k: usize) -> bool {
        match self {
            TableRule::ScalarLeft => j == 0,
            TableRule::ScalarRight => k == 0,
            TableRule::VectorLeft => j == 1,
            TableRule::VectorRight => k == 1,
            TableRule::TwoTwo => (j, k) == (2, 2),
            TableRule::TwoThree => (j, k) == (2, 3),
            TableRule::TwoFour => (j, k) == (2, 4),
            TableRule::ThreeTwo => (j, k) == (3, 2),
            TableRule::ThreeThree => (j, k) == (3, 3),
            TableRule::ThreeFour => (j, k) == (3, 4),
            TableRule::FourTwo => (j, k) == (4, 2),
            TableRule::FourThree => (j, k) == (4, 3),
            TableRule::FourFour => (j, k) == (4, 4),
        }
    }

    /// Every rule whose grade pattern matches `(j, k)`.
    pub fn covering(j: usize, k: usize) -> Vec<TableRule> {
        Self::ALL.into_iter().filter(|r| r.applies(j, k)).collect()
    }

    /// The rule used for `(j, k)`: grade-0 lines first, then the vector
    /// lines, then the explicit pairs.
    pub fn primary(j: usize, k: usize) -> Option<TableRule> {
        Self::covering(j, k).first().copied()
    }

    /// Applies this rule's right-hand side to homogeneous `u`, `v`.
    pub fn apply<S: Scalar>(self, u: &Multivector<S>, v: &Multivector<S>) -> Multivector<S> {
        let star = hodge_star_direct::<S>;
        match self {
            TableRule::ScalarLeft | TableRule::ScalarRight => u.wedge(v),
            TableRule::VectorLeft => u.wedge(v).sub(&star(&u.wedge(&star(v)))),
            TableRule::VectorRight => u.wedge(v).add(&star(&star(u).wedge(v))),
            TableRule::TwoTwo => {
                let half = S::from_ratio(1, 2);
                let com = com_bracket(u, v).expect("grade-2 arguments");
                u.wedge(v)
                    .add(&star(&u.wedge(&star(v))))
                    .add(&com.scale(&half))
            }
            TableRule::TwoThree => star(u).wedge(&star(v)).sub(&star(&u.wedge(&star(v)))),
            TableRule::ThreeTwo => star(u)
                .wedge(&star(v))
                .neg()
                .sub(&star(&star(u).wedge(v))),
            TableRule::ThreeThree => star(u).wedge(&star(v)).add(&star(&u.wedge(&star(v)))),
            TableRule::TwoFour | TableRule::ThreeFour | TableRule::FourTwo => star(u).wedge(&star(v)),
            TableRule::FourThree | TableRule::FourFour => star(u).wedge(&star(v)).neg(),
        }
    }
}

fn grade_parts<S: Scalar>(u: &Multivector<S>) -> [Multivector<S>; 5] {
    std::array::from_fn(|k| u.grade_part(k).expect("k <= 4"))
}

/// Clifford product assembled from the grade-pair formulas, evaluated
/// directly with the permutation-sum star.
pub fn clifford_product_direct<S: Scalar>(u: &Multivector<S>, v: &Multivector<S>) -> Multivector<S> {
    let up = grade_parts(u);
    let vp = grade_parts(v);
    let mut out = Multivector::zero();
    for (j, a) in up.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (k, b) in vp.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            let rule = TableRule::primary(j, k).expect("every grade pair is covered");
            out = out.add(&rule.apply(a, b));
        }
    }
    out
}

static TABLE_PRODUCT: LazyLock<[[(i8, Blade); 16]; 16]> = LazyLock::new(|| {
    std::array::from_fn(|a| {
        std::array::from_fn(|b| {
            let x = Multivector::<Exact>::blade(Blade::new(a as u8).expect("mask"));
            let y = Multivector::<Exact>::blade(Blade::new(b as u8).expect("mask"));
            let p = clifford_product_direct(&x, &y);
            let mut terms = p.terms();
            let (blade, c) = terms.next().expect("blade products are invertible");
            assert!(terms.next().is_none(), "blade product is a single blade");
            let sign = if *c == Exact::one() { 1 } else { -1 };
            (sign, blade)
        })
    })
});

/// Table-formula product of two basis forms, memoized.
pub fn table_product_of_blades(a: Blade, b: Blade) -> (i8, Blade) {
    TABLE_PRODUCT[a.index()][b.index()]
}

/// Clifford product of forms through the memoized grade-pair table.
pub fn clifford_product_via_table<S: Scalar>(u: &Multivector<S>, v: &Multivector<S>) -> Multivector<S> {
    let mut out = Multivector::<S>::zero();
    for (a, x) in u.terms() {
        for (b, y) in v.terms() {
            let (sign, c) = table_product_of_blades(a, b);
            let term = x.times(y);
            let slot = if sign > 0 {
                out.coeff(c).plus(&term)
            } else {
                out.coeff(c).minus(&term)
            };
            out.set(c, slot);
        }
    }
    out
}

/// One grade pair of the coverage audit.
#[derive(Clone, Debug, Serialize)]
pub struct AuditEntry {
    pub left_grade: usize,
    pub right_grade: usize,
    pub rule: Option<TableRule>,
    /// All rules whose pattern matches; when more than one applies they are
    /// checked to agree on every blade pair of these grades.
    pub overlapping: Vec<TableRule>,
    pub overlaps_agree: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct AuditReport {
    pub entries: Vec<AuditEntry>,
    pub all_covered: bool,
}

/// Enumerates all 25 grade pairs and records which formula handles each.
pub fn missing_case_audit() -> AuditReport {
    let mut entries = Vec::with_capacity(25);
    for j in 0..5 {
        for k in 0..5 {
            let overlapping = TableRule::covering(j, k);
            let overlaps_agree = Blade::of_grade(j).all(|a| {
                Blade::of_grade(k).all(|b| {
                    let x = Multivector::<Exact>::blade(a);
                    let y = Multivector::<Exact>::blade(b);
                    let values: Vec<_> = overlapping.iter().map(|r| r.apply(&x, &y)).collect();
                    values.windows(2).all(|w| w[0] == w[1])
                })
            });
            entries.push(AuditEntry {
                left_grade: j,
                right_grade: k,
                rule: overlapping.first().copied(),
                overlapping,
                overlaps_agree,
            });
        }
    }
    let all_covered = entries.iter().all(|e| e.rule.is_some() && e.overlaps_agree);
    AuditReport { entries, all_covered }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Exact;

    type Mv = Multivector<Exact>;

    #[test]
    fn star_examples() {
        assert_eq!(hodge_star_direct(&Mv::one()), Mv::pseudoscalar());
        assert_eq!(hodge_star_direct(&Mv::pseudoscalar()), Mv::one().neg());
        let e0 = Mv::basis_vector(0);
        assert_eq!(hodge_star_direct(&hodge_star_direct(&e0)), e0);
    }

    #[test]
    fn double_star_sign_per_grade() {
        for b in Blade::all() {
            let x = Mv::blade(b);
            let expected = if b.grade() % 2 == 1 { x.clone() } else { x.neg() };
            assert_eq!(hodge_star(&hodge_star(&x)), expected, "{b}");
            assert_eq!(star_of_blade(b).1, b.complement());
        }
    }

    #[test]
    fn com_examples() {
        let e01 = Mv::basis(&[0, 1]);
        let e12 = Mv::basis(&[1, 2]);
        assert!(com_bracket(&e01, &e01).unwrap().is_zero());
        assert_eq!(com_bracket(&e01, &e12).unwrap(), Mv::from_i64_terms(&[(&[0, 2], -2)]));
        assert!(com_bracket(&Mv::basis_vector(0), &e12).is_err());
    }

    #[test]
    fn table_examples() {
        let e0 = Mv::basis_vector(0);
        let e1 = Mv::basis_vector(1);
        let e12 = Mv::basis(&[1, 2]);
        assert_eq!(clifford_product_direct(&e0, &e0), Mv::one());
        assert_eq!(clifford_product_direct(&e0, &e1), Mv::basis(&[0, 1]));
        assert_eq!(clifford_product_direct(&e12, &e12), Mv::one().neg());
    }

    #[test]
    fn audit_covers_everything() {
        let report = missing_case_audit();
        assert_eq!(report.entries.len(), 25);
        assert!(report.all_covered);
        let at = |j: usize, k: usize| report.entries[j * 5 + k].rule;
        assert_eq!(at(2, 2), Some(TableRule::TwoTwo));
        assert_eq!(at(0, 3), Some(TableRule::ScalarLeft));
        assert_eq!(at(1, 1), Some(TableRule::VectorLeft));
    }
}

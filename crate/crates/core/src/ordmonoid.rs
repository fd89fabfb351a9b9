//! Sharp saturated monoids in an integer lattice, the partial order they
//! induce on the lattice, boundedness witnesses, and totally ordered
//! (valuative) refinements given by lexicographic weight matrices.

use crate::error::{Error, Result};
use crate::linalg;
use crate::lp::{self, Lp};
use crate::rat::{ceil_q, floor_q, LatVec, Q};
use num::bigint::BigInt;
use num::{Integer, One, Signed, Zero};
use std::cmp::Ordering;

/// A sharp, saturated submonoid of Z^n given by generators. Membership is
/// rational-cone membership plus integrality, so the represented monoid is the
/// saturation of the generated one by construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SharpMonoid {
    ambient_rank: usize,
    generators: Vec<LatVec>,
}

impl SharpMonoid {
    pub fn new(ambient_rank: usize, generators: Vec<LatVec>) -> Result<Self> {
        for g in &generators {
            if g.dim() != ambient_rank {
                return Err(Error::DimensionMismatch { expected: ambient_rank, got: g.dim() });
            }
            if g.is_zero() || !g.is_integral() {
                return Err(Error::BadGenerator);
            }
        }
        for (i, g) in generators.iter().enumerate() {
            if generators[..i].contains(g) {
                return Err(Error::BadGenerator);
            }
        }
        let m = SharpMonoid { ambient_rank, generators };
        if m.positive_functional().is_none() {
            return Err(Error::NotSharp);
        }
        Ok(m)
    }

    /// The free monoid N^n.
    pub fn orthant(n: usize) -> Self {
        let gens = (0..n)
            .map(|i| {
                let mut v = vec![0i64; n];
                v[i] = 1;
                LatVec::from_ints(&v)
            })
            .collect();
        SharpMonoid::new(n, gens).expect("orthant is sharp")
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn generators(&self) -> &[LatVec] {
        &self.generators
    }

    fn check_dim(&self, x: &LatVec) -> Result<()> {
        if x.dim() != self.ambient_rank {
            return Err(Error::DimensionMismatch { expected: self.ambient_rank, got: x.dim() });
        }
        Ok(())
    }

    /// Generator matrix with generators as columns (n rows).
    fn gen_columns(&self) -> Vec<Vec<Q>> {
        (0..self.ambient_rank)
            .map(|i| self.generators.iter().map(|g| g.coords[i].clone()).collect())
            .collect()
    }

    /// Rational-cone membership (ignores integrality).
    pub fn cone_contains(&self, x: &LatVec) -> Result<bool> {
        self.check_dim(x)?;
        if x.is_zero() {
            return Ok(true);
        }
        if self.generators.is_empty() {
            return Ok(false);
        }
        Ok(lp::feasible(&self.gen_columns(), &x.coords).is_some())
    }

    /// Saturated-monoid membership: in the rational cone and integral.
    pub fn contains(&self, x: &LatVec) -> Result<bool> {
        Ok(x.is_integral() && self.cone_contains(x)?)
    }

    /// The partial order: a <= b iff b - a is in the monoid.
    pub fn leq(&self, a: &LatVec, b: &LatVec) -> Result<bool> {
        self.check_dim(a)?;
        self.contains(&b.sub(a))
    }

    /// A rational functional strictly positive on every generator (witnesses
    /// sharpness), normalized to the smallest integer vector. None iff the
    /// cone is not strictly convex.
    fn positive_functional(&self) -> Option<Vec<Q>> {
        let n = self.ambient_rank;
        let k = self.generators.len();
        if k == 0 {
            return Some(vec![Q::zero(); n]);
        }
        // Variables: u (n), v (n), slack s (k); w = u - v with w·g - s = 1.
        let mut a = Vec::with_capacity(k);
        for (gi, g) in self.generators.iter().enumerate() {
            let mut row = Vec::with_capacity(2 * n + k);
            row.extend(g.coords.iter().cloned());
            row.extend(g.coords.iter().map(|c| -c));
            for j in 0..k {
                row.push(if j == gi { -Q::one() } else { Q::zero() });
            }
            a.push(row);
        }
        let b = vec![Q::one(); k];
        let mut c = vec![-Q::one(); 2 * n];
        c.extend(std::iter::repeat(Q::zero()).take(k));
        match lp::maximize(&a, &b, &c) {
            Lp::Optimal(x, _) => {
                let w: Vec<Q> = (0..n).map(|j| &x[j] - &x[n + j]).collect();
                Some(normalize_integer_row(&w))
            }
            _ => None,
        }
    }

    /// Boundedness witnesses: integers m <= n with m·delta <= alpha <= n·delta
    /// in the partial order, if alpha is bounded by delta; decided over the
    /// rational cone, with extremal rational multipliers rounded inwards.
    pub fn bounds(&self, alpha: &LatVec, delta: &LatVec) -> Result<Option<(BigInt, BigInt)>> {
        self.check_dim(alpha)?;
        if !self.contains(delta)? {
            return Err(Error::NotInMonoid);
        }
        if delta.is_zero() {
            // alpha bounded by 0 iff alpha is a unit, i.e. 0 by sharpness.
            return Ok(if alpha.is_zero() { Some((BigInt::zero(), BigInt::zero())) } else { None });
        }
        let k = self.generators.len();
        // Variables: lambda (k) >= 0, p, q >= 0 with the multiplier p - q.
        let build = |delta_sign: i64, rhs: &LatVec| -> (Vec<Vec<Q>>, Vec<Q>) {
            let mut a = Vec::with_capacity(self.ambient_rank);
            for i in 0..self.ambient_rank {
                let mut row: Vec<Q> =
                    self.generators.iter().map(|g| g.coords[i].clone()).collect();
                let d = &delta.coords[i] * &Q::from(BigInt::from(delta_sign));
                row.push(d.clone());
                row.push(-d);
                a.push(row);
            }
            (a, rhs.coords.clone())
        };
        let mut c = vec![Q::zero(); k];
        c.push(Q::one());
        c.push(-Q::one());

        // Largest rational m with m·delta <= alpha: G·lambda + m·delta = alpha.
        let (a1, b1) = build(1, alpha);
        let m_star = match lp::maximize(&a1, &b1, &c) {
            Lp::Optimal(x, _) => &x[k] - &x[k + 1],
            Lp::Infeasible => return Ok(None),
            Lp::Unbounded => {
                return Err(Error::Internal("unbounded multiplier in a sharp cone".into()))
            }
        };
        // Smallest rational n with alpha <= n·delta: G·lambda - n·delta = -alpha,
        // minimized by maximizing the negated multiplier.
        let (a2, b2) = build(-1, &alpha.neg());
        let mut c2 = vec![Q::zero(); k];
        c2.push(-Q::one());
        c2.push(Q::one());
        let n_star = match lp::maximize(&a2, &b2, &c2) {
            Lp::Optimal(x, _) => &x[k] - &x[k + 1],
            Lp::Infeasible => return Ok(None),
            Lp::Unbounded => {
                return Err(Error::Internal("unbounded multiplier in a sharp cone".into()))
            }
        };
        Ok(Some((floor_q(&m_star), ceil_q(&n_star))))
    }

    /// A deterministic total-order refinement: first weight row is a strictly
    /// positive functional found by exact LP (smallest integer normalization),
    /// followed by the standard basis rows that are independent of the rows
    /// already chosen.
    pub fn totalize(&self) -> Result<ValuationOrder> {
        let n = self.ambient_rank;
        let mut rows: Vec<Vec<Q>> = Vec::new();
        if !self.generators.is_empty() {
            let w = self.positive_functional().ok_or(Error::NotSharp)?;
            rows.push(w);
        }
        for i in 0..n {
            if linalg::rank(&rows) == n {
                break;
            }
            let mut e = vec![Q::zero(); n];
            e[i] = Q::one();
            let mut cand = rows.clone();
            cand.push(e.clone());
            if linalg::rank(&cand) > linalg::rank(&rows) {
                rows.push(e);
            }
        }
        ValuationOrder::new(self.clone(), rows)
    }
}

/// Scale a rational row to the shortest integer vector with the same direction.
fn normalize_integer_row(w: &[Q]) -> Vec<Q> {
    let mut lcm = BigInt::one();
    for c in w {
        lcm = lcm.lcm(c.denom());
    }
    let ints: Vec<BigInt> = w.iter().map(|c| (c * Q::from(lcm.clone())).to_integer()).collect();
    let mut gcd = BigInt::zero();
    for i in &ints {
        gcd = gcd.gcd(i);
    }
    if gcd.is_zero() {
        return w.to_vec();
    }
    ints.into_iter().map(|i| Q::from(i / gcd.clone())).collect()
}

/// A total order on the ambient lattice: compare weight-matrix images
/// lexicographically. Models a sharp valuation of the monoid; the rows are the
/// archimedean levels of the induced filtration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValuationOrder {
    base: SharpMonoid,
    weights: Vec<Vec<Q>>,
}

impl ValuationOrder {
    pub fn new(base: SharpMonoid, weights: Vec<Vec<Q>>) -> Result<Self> {
        let n = base.ambient_rank();
        for row in &weights {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: row.len() });
            }
        }
        let v = ValuationOrder { base, weights };
        for g in v.base.generators() {
            if v.lex_sign(g) != Ordering::Greater {
                return Err(Error::NotOrderPreserving);
            }
        }
        Ok(v)
    }

    pub fn base(&self) -> &SharpMonoid {
        &self.base
    }

    pub fn weights(&self) -> &[Vec<Q>] {
        &self.weights
    }

    pub fn num_levels(&self) -> usize {
        self.weights.len()
    }

    pub fn ambient_rank(&self) -> usize {
        self.base.ambient_rank()
    }

    pub fn has_full_rank(&self) -> bool {
        linalg::rank(&self.weights) == self.ambient_rank()
    }

    pub fn image(&self, x: &LatVec) -> Vec<Q> {
        self.weights.iter().map(|row| x.dot_row(row)).collect()
    }

    /// Sign of x in the total order (first nonzero weight row).
    pub fn lex_sign(&self, x: &LatVec) -> Ordering {
        for row in &self.weights {
            let v = x.dot_row(row);
            if !v.is_zero() {
                return if v.is_positive() { Ordering::Greater } else { Ordering::Less };
            }
        }
        Ordering::Equal
    }

    pub fn lex_cmp(&self, a: &LatVec, b: &LatVec) -> Ordering {
        self.lex_sign(&b.sub(a)).reverse()
    }

    pub fn lex_leq(&self, a: &LatVec, b: &LatVec) -> Result<bool> {
        if a.dim() != self.ambient_rank() || b.dim() != self.ambient_rank() {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_rank(),
                got: a.dim().max(b.dim()),
            });
        }
        Ok(self.lex_cmp(a, b) != Ordering::Greater)
    }

    /// 1-based index of the first weight row that does not annihilate x, or
    /// num_levels + 1 when the image vanishes: x's archimedean level.
    pub fn arch_level(&self, x: &LatVec) -> Result<usize> {
        if x.dim() != self.ambient_rank() {
            return Err(Error::DimensionMismatch { expected: self.ambient_rank(), got: x.dim() });
        }
        for (j, row) in self.weights.iter().enumerate() {
            if !x.dot_row(row).is_zero() {
                return Ok(j + 1);
            }
        }
        Ok(self.weights.len() + 1)
    }

    /// Greatest integer k with k·delta <= alpha in this order, provided alpha
    /// is bounded by delta (their archimedean levels allow it); None otherwise.
    /// delta must be lex-positive.
    pub fn floor_div(&self, alpha: &LatVec, delta: &LatVec) -> Result<Option<BigInt>> {
        if self.lex_sign(delta) != Ordering::Greater {
            return Err(Error::NotPositive);
        }
        let wa = self.image(alpha);
        let wd = self.image(delta);
        let j = wd.iter().position(|v| !v.is_zero()).expect("delta is lex-positive");
        if wa[..j].iter().any(|v| !v.is_zero()) {
            // alpha dominates delta: not bounded.
            return Ok(None);
        }
        let k0 = floor_q(&(&wa[j] / &wd[j]));
        // k0 is right up to the deeper rows; correct by one lex step if needed.
        let candidate = |k: &BigInt| -> bool {
            let r = alpha.sub(&delta.scale_int(k));
            self.lex_sign(&r) != Ordering::Less
        };
        let k = if candidate(&k0) { k0 } else { k0 - 1 };
        debug_assert!(candidate(&k));
        debug_assert!(!candidate(&(&k + 1)));
        Ok(Some(k))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::qi;

    fn n2() -> SharpMonoid {
        SharpMonoid::orthant(2)
    }

    fn lv(v: &[i64]) -> LatVec {
        LatVec::from_ints(v)
    }

    #[test]
    fn contains_orthant() {
        let m = n2();
        assert!(m.contains(&lv(&[0, 0])).unwrap());
        assert!(m.contains(&lv(&[2, 3])).unwrap());
        assert!(!m.contains(&lv(&[1, -1])).unwrap());
    }

    #[test]
    fn contains_saturation() {
        // (1,1) = 1/3 (2,1) + 1/3 (1,2): in the saturation though not in the
        // generated monoid.
        let m = SharpMonoid::new(2, vec![lv(&[2, 1]), lv(&[1, 2])]).unwrap();
        assert!(m.contains(&lv(&[1, 1])).unwrap());
        assert!(!m.contains(&lv(&[1, 0])).unwrap());
        assert!(!m.contains(&LatVec::new(vec![crate::rat::qr(1, 2), crate::rat::qr(1, 2)])).unwrap());
    }

    #[test]
    fn rejects_non_sharp() {
        assert!(matches!(
            SharpMonoid::new(1, vec![lv(&[1]), lv(&[-1])]),
            Err(Error::NotSharp)
        ));
        assert!(matches!(
            SharpMonoid::new(2, vec![lv(&[1, 0]), lv(&[0, 0])]),
            Err(Error::BadGenerator)
        ));
    }

    #[test]
    fn leq_basic() {
        let m = n2();
        let x = lv(&[4, 7]);
        assert!(m.leq(&x, &x).unwrap());
        assert!(m.leq(&lv(&[1, 0]), &lv(&[1, 1])).unwrap());
        assert!(!m.leq(&lv(&[1, 0]), &lv(&[0, 1])).unwrap());
        assert!(!m.leq(&lv(&[0, 1]), &lv(&[1, 0])).unwrap());
    }

    #[test]
    fn bounds_trivial_cases() {
        let m = n2();
        let d = lv(&[1, 1]);
        assert_eq!(m.bounds(&d, &d).unwrap(), Some((BigInt::from(1), BigInt::from(1))));
        assert_eq!(
            m.bounds(&lv(&[0, 0]), &d).unwrap(),
            Some((BigInt::from(0), BigInt::from(0)))
        );
    }

    /// Brute-force oracle for the boundedness witnesses.
    fn bounds_oracle(m: &SharpMonoid, alpha: &LatVec, delta: &LatVec) -> Option<(i64, i64)> {
        let lo = (-4..=4).filter(|&k| m.leq(&delta.scale_i64(k), alpha).unwrap()).min()?;
        let best_lo = (-4..=4).filter(|&k| m.leq(&delta.scale_i64(k), alpha).unwrap()).max()?;
        let hi = (-4..=4).filter(|&k| m.leq(alpha, &delta.scale_i64(k)).unwrap()).min()?;
        let _ = lo;
        Some((best_lo, hi))
    }

    #[test]
    fn bounds_witnesses_match_oracle() {
        let m = n2();
        let d = lv(&[1, 1]);
        assert_eq!(
            m.bounds(&lv(&[0, 1]), &d).unwrap(),
            Some((BigInt::from(0), BigInt::from(1)))
        );
        assert_eq!(bounds_oracle(&m, &lv(&[0, 1]), &d), Some((0, 1)));
        // (2,-1) is bounded by (1,1): -1·(1,1) <= (2,-1) <= 2·(1,1).
        assert_eq!(
            m.bounds(&lv(&[2, -1]), &d).unwrap(),
            Some((BigInt::from(-1), BigInt::from(2)))
        );
        assert_eq!(bounds_oracle(&m, &lv(&[2, -1]), &d), Some((-1, 2)));
        // Genuinely unbounded: (1,0) against delta = (0,1).
        assert_eq!(m.bounds(&lv(&[1, 0]), &lv(&[0, 1])).unwrap(), None);
        assert_eq!(bounds_oracle(&m, &lv(&[1, 0]), &lv(&[0, 1])), None);
    }

    #[test]
    fn bounds_rejects_delta_outside() {
        let m = n2();
        assert!(matches!(m.bounds(&lv(&[0, 0]), &lv(&[-1, 0])), Err(Error::NotInMonoid)));
    }

    #[test]
    fn totalize_line() {
        let m = SharpMonoid::orthant(1);
        let v = m.totalize().unwrap();
        assert_eq!(v.weights(), &[vec![qi(1)]]);
    }

    #[test]
    fn totalize_orthant_2() {
        let v = n2().totalize().unwrap();
        assert_eq!(v.weights(), &[vec![qi(1), qi(1)], vec![qi(1), qi(0)]]);
        for g in v.base().generators() {
            assert_eq!(v.lex_sign(g), Ordering::Greater);
        }
    }

    #[test]
    fn totalize_skew_cone() {
        let m = SharpMonoid::new(2, vec![lv(&[1, 0]), lv(&[1, 1])]).unwrap();
        let v = m.totalize().unwrap();
        assert!(v.has_full_rank());
        for g in v.base().generators() {
            assert_eq!(v.lex_sign(g), Ordering::Greater);
        }
    }

    #[test]
    fn lex_leq_examples() {
        let v = n2().totalize().unwrap();
        let a = lv(&[4, -4]);
        assert!(v.lex_leq(&a, &a).unwrap());
        // W = ((1,1),(1,0)): (0,1) < (1,0).
        assert!(v.lex_leq(&lv(&[0, 1]), &lv(&[1, 0])).unwrap());
        assert!(!v.lex_leq(&lv(&[1, 0]), &lv(&[0, 1])).unwrap());
        // Rank-deficient kernel collapse: both directions hold.
        let w1 = ValuationOrder::new(
            SharpMonoid::new(2, vec![lv(&[1, 0])]).unwrap(),
            vec![vec![qi(1), qi(0)]],
        )
        .unwrap();
        assert!(w1.lex_leq(&lv(&[0, 5]), &lv(&[0, -5])).unwrap());
        assert!(w1.lex_leq(&lv(&[0, -5]), &lv(&[0, 5])).unwrap());
    }

    #[test]
    fn arch_levels() {
        let v = n2().totalize().unwrap();
        assert_eq!(v.arch_level(&lv(&[0, 0])).unwrap(), 3);
        assert_eq!(v.arch_level(&lv(&[1, -1])).unwrap(), 2);
        assert_eq!(v.arch_level(&lv(&[1, 0])).unwrap(), 1);
    }

    /// Spec'd oracle: scan k in [-8, 8], take the max with k·delta <= alpha.
    fn floor_div_oracle(v: &ValuationOrder, alpha: &LatVec, delta: &LatVec) -> Option<i64> {
        (-8..=8).filter(|&k| v.lex_leq(&delta.scale_i64(k), alpha).unwrap()).max()
    }

    #[test]
    fn floor_div_examples() {
        let ident = ValuationOrder::new(n2(), vec![vec![qi(1), qi(0)], vec![qi(0), qi(1)]]).unwrap();
        let delta = lv(&[1, 0]);
        assert_eq!(ident.floor_div(&lv(&[0, 0]), &delta).unwrap(), Some(BigInt::zero()));
        assert_eq!(ident.floor_div(&delta.scale_i64(3), &delta).unwrap(), Some(BigInt::from(3)));
        // (2,-7): (2,-7) - 2(1,0) = (0,-7) is lex-negative, so the answer is 1.
        let alpha = lv(&[2, -7]);
        assert_eq!(ident.floor_div(&alpha, &delta).unwrap(), Some(BigInt::from(1)));
        assert_eq!(floor_div_oracle(&ident, &alpha, &delta), Some(1));
        // Deeper-level alpha against deeper-level-free delta exists...
        assert_eq!(ident.floor_div(&lv(&[0, 3]), &delta).unwrap(), Some(BigInt::zero()));
        // ...but level-1 alpha is unbounded by a level-2 delta.
        assert_eq!(ident.floor_div(&lv(&[1, 0]), &lv(&[0, 1])).unwrap(), None);
        assert!(matches!(ident.floor_div(&lv(&[1, 0]), &lv(&[0, -1])), Err(Error::NotPositive)));
    }

    #[test]
    fn floor_div_matches_oracle_randomish() {
        let ident = ValuationOrder::new(n2(), vec![vec![qi(1), qi(0)], vec![qi(0), qi(1)]]).unwrap();
        let huge = 1i64 << 40;
        for a0 in -4..=4 {
            for a1 in -4..=4 {
                for d in [lv(&[1, 0]), lv(&[1, -2]), lv(&[0, 1]), lv(&[2, 3])] {
                    let alpha = lv(&[a0, a1]);
                    let valid =
                        |k: i64| ident.lex_leq(&d.scale_i64(k), &alpha).unwrap();
                    match ident.floor_div(&alpha, &d).unwrap() {
                        Some(g) => {
                            // A floor: valid, and the next step is not.
                            assert_eq!(Some(g.clone()), floor_div_oracle(&ident, &alpha, &d).map(BigInt::from), "oracle disagrees for {:?}/{:?}", alpha, d);
                            let g = i64::try_from(&g).unwrap();
                            assert!(valid(g) && !valid(g + 1));
                        }
                        None => {
                            // No finite maximum: either every huge multiple
                            // still fits below alpha, or none fits at all.
                            assert!(
                                valid(huge) || (!valid(-huge) && !valid(0) && !valid(huge)),
                                "floor_div None but a finite floor exists for {:?}/{:?}",
                                alpha,
                                d
                            );
                        }
                    }
                }
            }
        }
    }
}

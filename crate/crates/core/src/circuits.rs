//! Circuits of `{Ax = b, Bx <= d}` and maximal steps along them.
//!
//! A circuit is a nonzero `g` with `Ag = 0` whose image `Bg` has
//! inclusion-minimal support, scaled to coprime integers. Equivalently the
//! rows of `B` vanishing on `g`, stacked with `A`, have rank `n - 1`.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::exactla::{
    add_scaled, binomial, canonical_direction, dot, is_zero_vec, kernel_rows, neg, next_combination, rank_rows,
    RatVector, Rational,
};
use crate::polyhedron::Polyhedron;

/// Guard for the pairwise support oracle.
pub const ORACLE_SUBSET_LIMIT: u128 = 2_000_000;

/// A canonical circuit `g` (first nonzero entry positive) with `image = Bg`,
/// used in orientation `sign * g`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Circuit {
    pub g: RatVector,
    pub image: RatVector,
    pub sign: i8,
}

impl Circuit {
    fn canonical(p: &Polyhedron, g: RatVector) -> Circuit {
        let image = p.bm().mul_vec(&g);
        Circuit { g, image, sign: 1 }
    }

    /// Normalizes `v` and records its orientation. `v` must lie in `ker A`.
    pub fn from_direction(p: &Polyhedron, v: &[Rational]) -> Result<Circuit> {
        if v.len() != p.n() {
            return Err(Error::ShapeMismatch(format!("direction has {} entries, n = {}", v.len(), p.n())));
        }
        if !p.a().mul_vec(v).iter().all(|x| *x == 0) {
            return Err(Error::NotACircuit);
        }
        let (g, sign) = normalize_circuit(v)?;
        Ok(Circuit { sign, ..Circuit::canonical(p, g) })
    }

    pub fn oriented(&self, sign: i8) -> Circuit {
        Circuit { sign, ..self.clone() }
    }

    pub fn reversed(&self) -> Circuit {
        self.oriented(-self.sign)
    }

    pub fn direction(&self) -> RatVector {
        if self.sign < 0 {
            neg(&self.g)
        } else {
            self.g.clone()
        }
    }

    pub fn oriented_image(&self) -> RatVector {
        if self.sign < 0 {
            neg(&self.image)
        } else {
            self.image.clone()
        }
    }
}

/// Coprime integer form with first nonzero entry positive, and the sign
/// relating it to `v`.
pub fn normalize_circuit(v: &[Rational]) -> Result<(RatVector, i8)> {
    canonical_direction(v)
}

/// Circuits via greedy bases of rank-deficient row sets in reduced
/// coordinates; every basis of size `n - rank(A) - 1` yields a circuit.
pub fn circuits_rank_method(p: &Polyhedron) -> Result<Vec<Circuit>> {
    Ok(p.circuit_directions()?.iter().map(|g| Circuit::canonical(p, g.clone())).collect())
}

/// The circuit set together with a note when the representation is not
/// minimal (circuits depend on the rows as given).
#[derive(Clone, Debug)]
pub struct CircuitReport {
    pub circuits: Vec<Circuit>,
    pub warning: Option<String>,
}

pub fn circuit_report(p: &Polyhedron) -> Result<CircuitReport> {
    let circuits = circuits_rank_method(p)?;
    let warning = match p.is_bounded().and_then(|b| if b { p.minimality().map(Some) } else { Ok(None) }) {
        Ok(Some(rep)) if rep.is_minimal() => None,
        Ok(Some(rep)) => Some(format!(
            "representation is not minimal (redundant rows {:?}, duplicate rows {:?}); circuits follow the rows as given",
            rep.redundant, rep.duplicates
        )),
        Ok(None) => Some("polyhedron is unbounded; minimality was not checked".to_string()),
        Err(e) => Some(format!("minimality was not checked: {e}")),
    };
    Ok(CircuitReport { circuits, warning })
}

/// Membership test: `rank(A; B_Z) = n - 1` where `Z` are the
/// rows of `B` vanishing on `v`.
pub fn is_circuit(p: &Polyhedron, v: &[Rational]) -> bool {
    if v.len() != p.n() || is_zero_vec(v) || !p.a().mul_vec(v).iter().all(|x| *x == 0) {
        return false;
    }
    let zero: Vec<usize> = p.bm().rows().iter().enumerate().filter(|(_, r)| dot(r, v) == 0).map(|(i, _)| i).collect();
    p.rank_with(&zero) + 1 == p.n()
}

fn support(v: &[Rational]) -> Vec<usize> {
    v.iter().enumerate().filter(|(_, x)| **x != 0).map(|(i, _)| i).collect()
}

/// Independent brute force in the original coordinates: kernel generators
/// of every row subset of the right size, filtered by pairwise support
/// comparison of their images.
pub fn circuits_support_oracle(p: &Polyhedron) -> Result<Vec<Circuit>> {
    let n = p.n();
    let a_rows = p.a().rows().to_vec();
    let b_rows = p.bm().rows();
    let m_rows: Vec<RatVector> = a_rows.iter().chain(b_rows).cloned().collect();
    if rank_rows(&m_rows, n) < n {
        return Err(Error::NotPointed);
    }
    let rank_a = rank_rows(&a_rows, n);
    if rank_a == n {
        return Ok(Vec::new());
    }
    let k = n - 1 - rank_a;
    let m = b_rows.len();
    let needed = binomial(m, k);
    if needed > ORACLE_SUBSET_LIMIT {
        return Err(Error::SizeLimitExceeded { what: "oracle row subsets", needed, limit: ORACLE_SUBSET_LIMIT });
    }
    let mut cands: HashSet<RatVector> = HashSet::new();
    let mut c: Vec<usize> = (0..k).collect();
    loop {
        let mut stack = a_rows.clone();
        stack.extend(c.iter().map(|&i| b_rows[i].clone()));
        if rank_rows(&stack, n) == n - 1 {
            let ker = kernel_rows(&stack, n);
            cands.insert(ker.into_iter().next().expect("one-dimensional kernel"));
        }
        if k == 0 || !next_combination(&mut c, m) {
            break;
        }
    }
    let cands: Vec<(RatVector, Vec<usize>)> = cands
        .into_iter()
        .map(|g| {
            let s = support(&p.bm().mul_vec(&g));
            (g, s)
        })
        .collect();
    let mut out: Vec<RatVector> = cands
        .iter()
        .filter(|(_, sg)| {
            !cands.iter().any(|(_, sy)| sy.len() < sg.len() && sy.iter().all(|i| sg.binary_search(i).is_ok()))
        })
        .map(|(g, _)| g.clone())
        .collect();
    out.sort();
    Ok(out.into_iter().map(|g| Circuit::canonical(p, g)).collect())
}

fn is_feasible_at(slack: &[Rational], img: &[Rational]) -> bool {
    slack.iter().zip(img).all(|(s, v)| *s != 0 || *v <= 0)
}

/// Oriented circuits along which a positive step from `x` stays in `P`.
pub fn feasible_circuits_at(p: &Polyhedron, x: &[Rational]) -> Result<Vec<Circuit>> {
    if !p.contains(x) {
        return Err(Error::PointNotInPolyhedron);
    }
    let slack = p.slack(x);
    let mut out = Vec::new();
    for c in circuits_rank_method(p)? {
        for sign in [1i8, -1] {
            let oc = c.oriented(sign);
            if is_feasible_at(&slack, &oc.oriented_image()) {
                out.push(oc);
            }
        }
    }
    Ok(out)
}

/// Ratio test on precomputed slacks; `None` when no row bounds the step.
pub(crate) fn ratio(slack: &[Rational], img: &[Rational]) -> Option<Rational> {
    let mut best: Option<Rational> = None;
    for (s, v) in slack.iter().zip(img) {
        if *v > 0 {
            let a = s / v;
            if best.as_ref().is_none_or(|b| a < *b) {
                best = Some(a);
            }
        }
    }
    best
}

/// Longest feasible step from `x` along the oriented circuit `c`.
pub fn maximal_step(p: &Polyhedron, x: &[Rational], c: &Circuit) -> Result<(RatVector, Rational)> {
    if !p.contains(x) {
        return Err(Error::PointNotInPolyhedron);
    }
    let slack = p.slack(x);
    let img = c.oriented_image();
    if !is_feasible_at(&slack, &img) {
        return Err(Error::DirectionNotFeasible);
    }
    let alpha = ratio(&slack, &img).ok_or(Error::UnboundedDirection)?;
    Ok((add_scaled(x, &alpha, &c.direction()), alpha))
}

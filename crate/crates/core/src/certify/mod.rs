//! Dimension certification through exact Jacobian ranks, and the symbolic
//! identity checks behind the Φ correspondence.
//!
//! The rank of the Jacobian of a parameterization at any point is a lower
//! bound for the dimension of the closure of its image. A certificate
//! records the maximum rank over a few random integer points; it matches a
//! claimed dimension only relative to an independent upper bound.

pub mod charts;
pub mod claims;
pub mod identities;

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::{rat, DualScalar, RMatrix, Rational};

pub use charts::{sl2_chart, sl_chart};
pub use claims::{builtin_claims, claims_left, claims_lr, Claim, ClaimTable};
pub use identities::{literal_six_term_holds, verify_bracket_identity, verify_xi_identity};

/// Evaluates a rational map on dual-number inputs.
pub type Evaluator = Arc<dyn Fn(&[DualScalar]) -> Result<Vec<DualScalar>> + Send + Sync>;

/// Rational map `Q^k -> Q^N` from a parameter cube into a pair space.
#[derive(Clone)]
pub struct Parameterization {
    name: String,
    param_count: usize,
    output_count: usize,
    chart_guards: Vec<String>,
    evaluator: Evaluator,
}

impl fmt::Debug for Parameterization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Parameterization")
            .field("name", &self.name)
            .field("param_count", &self.param_count)
            .field("output_count", &self.output_count)
            .field("chart_guards", &self.chart_guards)
            .finish_non_exhaustive()
    }
}

impl Parameterization {
    pub fn new(
        name: impl Into<String>,
        param_count: usize,
        output_count: usize,
        chart_guards: Vec<String>,
        evaluator: Evaluator,
    ) -> Self {
        Self {
            name: name.into(),
            param_count,
            output_count,
            chart_guards,
            evaluator,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn param_count(&self) -> usize {
        self.param_count
    }

    pub fn output_count(&self) -> usize {
        self.output_count
    }

    pub fn chart_guards(&self) -> &[String] {
        &self.chart_guards
    }

    fn run(&self, inputs: &[DualScalar]) -> Result<Vec<DualScalar>> {
        if inputs.len() != self.param_count {
            return Err(Error::ShapeMismatch(format!(
                "{} expects {} parameters, got {}",
                self.name,
                self.param_count,
                inputs.len()
            )));
        }
        let out = (self.evaluator)(inputs)?;
        if out.len() != self.output_count {
            return Err(Error::ShapeMismatch(format!(
                "{} produced {} outputs, expected {}",
                self.name,
                out.len(),
                self.output_count
            )));
        }
        Ok(out)
    }
}

/// Value of the map at `point`.
pub fn evaluate(p: &Parameterization, point: &[Rational]) -> Result<Vec<Rational>> {
    let inputs: Vec<DualScalar> = point
        .iter()
        .map(|x| DualScalar::constant(x.clone(), 0))
        .collect();
    Ok(p.run(&inputs)?.into_iter().map(|d| d.value).collect())
}

/// Exact Jacobian (`outputs x params`) at `point`.
pub fn jacobian(p: &Parameterization, point: &[Rational]) -> Result<RMatrix> {
    let k = p.param_count;
    let inputs: Vec<DualScalar> = point
        .iter()
        .enumerate()
        .map(|(i, x)| DualScalar::variable(x.clone(), i, k))
        .collect();
    let out = p.run(&inputs)?;
    RMatrix::new(
        out.len(),
        k,
        out.into_iter().flat_map(|d| d.partials).collect(),
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    /// Achieved rank equals the claimed dimension.
    Certified,
    /// Achieved rank is below the claim: only a lower bound is shown.
    LowerBoundOnly,
    /// Achieved rank exceeds the claim, which contradicts it.
    Failed,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Certified => "CERTIFIED",
            Verdict::LowerBoundOnly => "LOWER_BOUND_ONLY",
            Verdict::Failed => "FAILED",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionCertificate {
    pub name: String,
    pub claimed: usize,
    pub achieved_rank: usize,
    pub param_count: usize,
    pub output_count: usize,
    pub trials: usize,
    pub seed: u64,
    /// Index of the first trial reaching `achieved_rank`.
    pub witness_trial: usize,
    pub witness_point: Vec<Rational>,
    pub verdict: Verdict,
}

/// Resampling budget per trial when a chart guard vanishes.
const ATTEMPTS_PER_TRIAL: usize = 64;
/// Sample coordinates lie in `[-SAMPLE_BOUND, SAMPLE_BOUND]`.
pub const SAMPLE_BOUND: i64 = 20;

/// Random generator for one trial: stream `trial` of the seeded ChaCha8.
pub fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

/// Point and Jacobian rank for one trial, or `None` if every sample hit a
/// chart singularity.
pub fn run_trial(
    p: &Parameterization,
    seed: u64,
    trial: usize,
) -> Result<Option<(Vec<Rational>, usize)>> {
    let mut rng = trial_rng(seed, trial);
    for _ in 0..ATTEMPTS_PER_TRIAL {
        let point: Vec<Rational> = (0..p.param_count)
            .map(|_| rat(rng.gen_range(-SAMPLE_BOUND..=SAMPLE_BOUND)))
            .collect();
        match jacobian(p, &point) {
            Ok(j) => return Ok(Some((point, j.rank()))),
            Err(Error::ChartSingularity(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Ok(None)
}

pub fn certify_dimension(
    p: &Parameterization,
    claimed: usize,
    trials: usize,
    seed: u64,
) -> Result<DimensionCertificate> {
    if trials == 0 {
        return Err(Error::Precondition("at least one trial is required".into()));
    }
    let results: Vec<Option<(Vec<Rational>, usize)>> = (0..trials)
        .into_par_iter()
        .map(|t| run_trial(p, seed, t))
        .collect::<Result<_>>()?;
    let best = results
        .into_iter()
        .enumerate()
        .filter_map(|(t, r)| r.map(|(pt, rank)| (t, pt, rank)))
        .fold(
            None::<(usize, Vec<Rational>, usize)>,
            |acc, cur| match acc {
                Some(a) if a.2 >= cur.2 => Some(a),
                _ => Some(cur),
            },
        );
    let Some((witness_trial, witness_point, achieved_rank)) = best else {
        return Err(Error::AllSamplesSingular {
            attempts: trials * ATTEMPTS_PER_TRIAL,
        });
    };
    let verdict = match achieved_rank.cmp(&claimed) {
        std::cmp::Ordering::Equal => Verdict::Certified,
        std::cmp::Ordering::Less => Verdict::LowerBoundOnly,
        std::cmp::Ordering::Greater => Verdict::Failed,
    };
    Ok(DimensionCertificate {
        name: p.name.clone(),
        claimed,
        achieved_rank,
        param_count: p.param_count,
        output_count: p.output_count,
        trials,
        seed,
        witness_trial,
        witness_point,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{variables, SparsePoly};
    use proptest::prelude::*;

    fn linear(m: RMatrix) -> Parameterization {
        let (rows, cols) = (m.rows(), m.cols());
        Parameterization::new(
            "linear",
            cols,
            rows,
            Vec::new(),
            Arc::new(move |x: &[DualScalar]| {
                Ok((0..rows)
                    .map(|i| {
                        let mut s = x[0].zero_like();
                        for (j, xj) in x.iter().enumerate() {
                            s = &s + &xj.scale(&m[(i, j)]);
                        }
                        s
                    })
                    .collect())
            }),
        )
    }

    #[test]
    fn linear_map_jacobian() {
        let m = RMatrix::from_i64(&[&[1, 2, 3], &[4, 5, 6]]);
        let p = linear(m.clone());
        assert_eq!(jacobian(&p, &[rat(7), rat(-1), rat(2)]).unwrap(), m);
    }

    #[test]
    fn hand_differentiated_map() {
        let p = Parameterization::new(
            "st",
            2,
            2,
            Vec::new(),
            Arc::new(|x: &[DualScalar]| Ok(vec![&x[0] * &x[1], &x[0] + &x[1]])),
        );
        let j = jacobian(&p, &[rat(1), rat(1)]).unwrap();
        assert_eq!(j, RMatrix::from_i64(&[&[1, 1], &[1, 1]]));
        let c = certify_dimension(&p, 2, 3, 0).unwrap();
        assert_eq!(c.verdict, Verdict::Certified);
    }

    #[test]
    fn constant_map_has_rank_zero() {
        let p = Parameterization::new(
            "constant",
            3,
            2,
            Vec::new(),
            Arc::new(|x: &[DualScalar]| Ok(vec![x[0].lift(rat(5)), x[0].lift(rat(-2))])),
        );
        let c = certify_dimension(&p, 0, 4, 9).unwrap();
        assert_eq!(c.achieved_rank, 0);
        assert_eq!(c.verdict, Verdict::Certified);
        let c = certify_dimension(&p, 1, 2, 9).unwrap();
        assert_eq!(c.verdict, Verdict::LowerBoundOnly);
        assert!(certify_dimension(&p, 0, 0, 9).is_err());
    }

    #[test]
    fn always_singular_chart_is_reported() {
        let p = Parameterization::new(
            "singular",
            1,
            1,
            vec!["never".into()],
            Arc::new(|_: &[DualScalar]| Err(Error::ChartSingularity("always".into()))),
        );
        assert!(matches!(
            certify_dimension(&p, 1, 2, 0),
            Err(Error::AllSamplesSingular { .. })
        ));
    }

    #[test]
    fn certificates_are_reproducible() {
        let p = linear(RMatrix::from_i64(&[&[1, 0], &[0, 0]]));
        let a = certify_dimension(&p, 1, 5, 42).unwrap();
        let b = certify_dimension(&p, 1, 5, 42).unwrap();
        assert_eq!(a, b);
        let j = jacobian(&p, &a.witness_point).unwrap();
        assert_eq!(j.rank(), a.achieved_rank);
        let (pt, _) = run_trial(&p, 42, a.witness_trial).unwrap().unwrap();
        assert_eq!(pt, a.witness_point);
    }

    /// Random polynomial in `vars` variables with small degree and coefficients.
    fn poly_strategy(vars: usize) -> impl Strategy<Value = Vec<(Vec<u32>, i64)>> {
        proptest::collection::vec(
            (proptest::collection::vec(0u32..=2, vars), -5i64..=5),
            1..=5,
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn dual_jacobian_matches_symbolic(
            polys in proptest::collection::vec(poly_strategy(3), 1..=4),
            point in proptest::collection::vec(-6i64..=6, 3),
        ) {
            let names = variables(&["x", "y", "z"]);
            let map: Vec<SparsePoly> = polys
                .iter()
                .map(|terms| {
                    let mut p = SparsePoly::zero(&names);
                    for (exps, c) in terms {
                        let mut t = SparsePoly::constant(&names, rat(*c));
                        for (v, &e) in exps.iter().enumerate() {
                            t = t.mul(&SparsePoly::var(&names, v).pow(e));
                        }
                        p = p.add(&t);
                    }
                    p
                })
                .collect();
            let symbolic = map.clone();
            let param = Parameterization::new(
                "poly",
                3,
                map.len(),
                Vec::new(),
                Arc::new(move |x: &[DualScalar]| Ok(map.iter().map(|p| p.eval_dual(x)).collect())),
            );
            let pt: Vec<Rational> = point.iter().map(|&x| rat(x)).collect();
            let j = jacobian(&param, &pt).unwrap();
            for (i, p) in symbolic.iter().enumerate() {
                for v in 0..3 {
                    prop_assert_eq!(&j[(i, v)], &p.derivative(v).eval(&pt));
                }
            }
        }
    }
}

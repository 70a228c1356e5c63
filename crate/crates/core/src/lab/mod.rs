//! Numerical verification of orderings, best-possible constants, identities
//! and cancelling means.

mod best;
mod cancel;
mod compare;
mod identities;
mod monotone;
mod suite;

pub use best::{best_constant, BestConstantResult, BisectionStep, BoundDirection};
pub use cancel::{
    cancelling_verdict, default_ladder, left_cancelling_verdict, CancelSide, CancelVerdict,
    CancellationVerdict, MemberCheck, MemberOutcome, RefutationWitness, WitnessSource,
    EVIDENCE_NOTE, SIGMA_MARGIN,
};
pub use compare::{
    chain_holds, compare, verify_chain, OrderingReport, Sample, Side, Verdict, Witness, DEFAULT_TOL,
};
pub use identities::{
    genlog3_ratio, holder2_gini_curvature, holder2_gini_gap, stolarsky_lehmer_residual,
    CurvatureCheck, IdentityResidual, RatioCheck,
};
pub use monotone::{monotone_in_param, MonotoneReport};
pub use suite::{
    run_check, run_suite, CheckResult, CheckStatus, SuiteConfig, SuiteReport, CHECKS,
    REFERENCE_VALUES,
};

//! Exact maximal functions, level sets, Orlicz functionals and the
//! distributional inequality for sphere averages.

mod distributional;
mod lp;
mod profile;

pub use distributional::{corpus_sweep, distributional_check, distributional_sweep, dyadic_corpus, CorpusSweep};
pub use lp::{strong_lp_probe, LpRow};
pub use profile::{
    auto_floor, maximal_function, orlicz_sum, orlicz_weak_ratio, weak_type_ratio, MaximalProfile, OrliczRecord,
    WeakTypeRatio,
};

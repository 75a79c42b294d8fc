//! A workbench for finite rings: construct small rings from Cayley tables,
//! enumerate their ideal lattices, decide the nilary family of ideal
//! predicates, and check the known implications between them over a corpus.

pub mod bitset;
pub mod classifier;
pub mod corpus;
pub mod dsl;
pub mod hunt;
pub mod ideal;
pub mod replay;
pub mod ring;
pub mod theorems;

pub use bitset::ElementSet;
pub use classifier::{
    classify_ring, full_report, Classifier, ClassifyError, Exhaustive, Judge, Predicate, PropertyReport, Verdict,
    Witness,
};
pub use corpus::{Caps, Corpus, CorpusConfig, CorpusError};
pub use dsl::{parse_ring_spec, parse_ring_spec_with, SpecError};
pub use hunt::{hunt, HuntReport, Query, Target};
pub use ideal::{Ideal, IdealError, IdealKind, IdealLattice};
pub use replay::{ReplayFailure, Replayer};
pub use ring::{Element, Hom, Ring, RingError};
pub use theorems::{run_all, run_selected, HarnessError, HarnessReport, TheoremResult};

//! Curve documents, the analysis pipeline, report rendering and the builtin corpus.

mod analyze;
mod corpus;
mod render;
mod schema;

pub use analyze::{
    analyze, AnalysisError, AnalyzeOptions, Check, LciReport, PlaneReport, Report, SingularityReport, Status,
    UnsupportedReport,
};
pub use corpus::{corpus_document, run_corpus, CorpusEntry, CorpusRow, CorpusRun, CORPUS};
pub use render::{render_report, report_json, report_text};
pub use schema::{
    load_curve, load_str, parse_document, to_document, validate, Asserted, AssertedDocument, BranchDocument,
    CurveDocument, CurveInput, LciDocument, LoadError, NonLciGerm, PlaneDocument, SingularityDocument,
    SingularityInput,
};

#[cfg(test)]
mod tests;

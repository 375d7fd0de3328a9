//! JSON documents written by the CLI and their standalone verification.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use twr_core::embedding::{verify_product_embedding, ProductEmbedding};
use twr_core::report::CertificateReport;
use twr_core::separator::{verify_necklace, NecklaceSplit};
use twr_core::structure::ProductReport;
use twr_core::Graph;
use twr_ramsey::host::ColoredHost;
use twr_ramsey::verify::{verify_embedding, EmbeddingMap};

use crate::experiment::{rebuild_trial, summarize, ExperimentReport};
use crate::instance::graph_data;
use crate::HarnessError;

/// A guest graph, a colored host and a monochromatic embedding between them.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EmbeddingDocument {
    #[serde(with = "graph_data")]
    pub h: Graph,
    pub host: ColoredHost,
    pub embedding: EmbeddingMap,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NecklaceDocument {
    pub colors: Vec<Option<usize>>,
    pub k: usize,
    pub split: NecklaceSplit,
    pub certificate: CertificateReport,
}

/// `decompose` output: the summary plus the full embedding.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DecomposeDocument {
    #[serde(flatten)]
    pub report: ProductReport,
    pub embedding: ProductEmbedding,
}

pub enum Document {
    Embedding(Box<EmbeddingDocument>),
    Necklace(NecklaceDocument),
    Decompose(Box<DecomposeDocument>),
    Product(Box<ProductEmbedding>),
    Experiment(Box<ExperimentReport>),
}

impl Document {
    /// Picks the document kind from its top-level keys.
    pub fn parse(text: &str) -> Result<Self, HarnessError> {
        let value: Value = serde_json::from_str(text)?;
        let has = |k: &str| value.get(k).is_some();
        let doc = if has("config") && has("summary") {
            Document::Experiment(Box::new(serde_json::from_value(value)?))
        } else if has("host") && has("embedding") {
            Document::Embedding(Box::new(serde_json::from_value(value)?))
        } else if has("split") {
            Document::Necklace(serde_json::from_value(value)?)
        } else if has("assignment") && has("embedding") {
            Document::Decompose(Box::new(serde_json::from_value(value)?))
        } else if has("tree") && has("map") && has("source") {
            Document::Product(Box::new(serde_json::from_value(value)?))
        } else {
            return Err(HarnessError::Usage("unrecognized document: expected an embedding, necklace, decomposition or experiment report".into()));
        };
        Ok(doc)
    }

    pub fn verify(&self) -> Result<CertificateReport, HarnessError> {
        Ok(match self {
            Document::Embedding(d) => verify_embedding_document(d),
            Document::Necklace(d) => verify_necklace(&d.colors, d.k, &d.split),
            Document::Decompose(d) => {
                let mut report = verify_product_embedding(&d.embedding);
                let e = &d.embedding;
                if d.report.assignment != e.map || d.report.tree_edges != e.tree.edges() || d.report.s_prime != e.clique_size {
                    report.violation("summary does not match the embedding");
                }
                report
            }
            Document::Product(pe) => verify_product_embedding(pe),
            Document::Experiment(r) => verify_experiment(r)?,
        })
    }
}

pub fn verify_embedding_document(doc: &EmbeddingDocument) -> CertificateReport {
    let mut report = CertificateReport::new();
    if let Err(e) = doc.host.validate() {
        report.violation(format!("host: {e}"));
        return report;
    }
    report.merge("embedding", verify_embedding(&doc.h, &doc.host, &doc.embedding));
    report
}

/// Rebuilds every successful trial's host from the config and re-verifies its embedding.
pub fn verify_experiment(report: &ExperimentReport) -> Result<CertificateReport, HarnessError> {
    let mut cert = CertificateReport::new();
    if report.trials.len() != report.config.trials {
        cert.violation(format!("{} trials reported for {} configured", report.trials.len(), report.config.trials));
    }
    if summarize(&report.trials) != report.summary {
        cert.violation("summary does not match the trials");
    }
    let mut checked = 0;
    for t in report.trials.iter().filter(|t| t.success) {
        let Some(embedding) = &t.embedding else {
            cert.violation(format!("trial {} succeeded without an embedding", t.trial));
            continue;
        };
        let setup = rebuild_trial(&report.config, t.trial)?;
        if setup.host.graph.edge_count() != t.host_edges {
            cert.violation(format!("trial {}: host has {} edges, report says {}", t.trial, setup.host.graph.edge_count(), t.host_edges));
        }
        let v = verify_embedding(&setup.h, &setup.host, embedding);
        cert.merge(&format!("trial {}", t.trial), v);
        checked += 1;
    }
    cert.metric("successes_checked", checked);
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{ExperimentConfig, Family};
    use crate::experiment::run_experiment;

    #[test]
    fn experiment_report_reverifies() {
        let config = ExperimentConfig { family: Family::Grid { side: 2 }, trials: 3, m: Some(16), ..Default::default() };
        let report = run_experiment(&config).unwrap();
        let doc = Document::parse(&report.to_json()).unwrap();
        let cert = doc.verify().unwrap();
        assert!(cert.pass, "{:?}", cert.violations);
    }

    #[test]
    fn tampered_embedding_fails() {
        let config = ExperimentConfig { family: Family::Grid { side: 2 }, colors: 1, trials: 1, m: Some(16), ..Default::default() };
        let mut report = run_experiment(&config).unwrap();
        let emb = report.trials[0].embedding.as_mut().unwrap();
        emb.map[1] = emb.map[0];
        assert!(!verify_experiment(&report).unwrap().pass);
    }

    #[test]
    fn unknown_document_is_usage_error() {
        assert!(matches!(Document::parse("{\"x\": 1}"), Err(HarnessError::Usage(_))));
        assert!(matches!(Document::parse("not json"), Err(HarnessError::Json(_))));
    }
}

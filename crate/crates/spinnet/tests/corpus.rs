//! The bundled `corpus/` diagrams all parse, round-trip through both
//! serialization formats, and stay evaluable.

use spinnet::diagram::SlicedDiagram;
use spinnet::invariant::EmbeddedGraphDiagram;
use spinnet::recoupling::Caches;
use std::path::PathBuf;

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn corpus_files() -> Vec<(String, String)> {
    let mut files: Vec<(String, String)> = std::fs::read_dir(corpus_dir())
        .expect("corpus directory exists")
        .map(|entry| {
            let path = entry.expect("readable directory entry").path();
            assert_eq!(
                path.extension().and_then(|e| e.to_str()),
                Some("json"),
                "stray non-JSON file in corpus: {}",
                path.display()
            );
            let name = path.file_stem().unwrap().to_string_lossy().into_owned();
            let body = std::fs::read_to_string(&path).expect("readable corpus file");
            (name, body)
        })
        .collect();
    files.sort();
    files
}

#[test]
fn corpus_is_large_enough_and_parses() {
    let files = corpus_files();
    assert!(files.len() >= 20, "only {} corpus diagrams", files.len());
    assert!(
        files.iter().any(|(name, _)| name == "theta"),
        "corpus must include theta.json"
    );
    for (name, body) in &files {
        SlicedDiagram::parse_json(body).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}

#[test]
fn json_round_trip_is_lossless() {
    for (name, body) in corpus_files() {
        let d = SlicedDiagram::parse_json(&body).unwrap_or_else(|e| panic!("{name}: {e}"));
        let reparsed = SlicedDiagram::parse_json(&d.to_json().to_string())
            .unwrap_or_else(|e| panic!("{name} re-parse: {e}"));
        assert_eq!(d, reparsed, "{name}: JSON round trip changed the diagram");
        let original: serde_json::Value = serde_json::from_str(&body).unwrap();
        assert_eq!(
            d.to_json(),
            original,
            "{name}: serialization drifted from the stored file"
        );
    }
}

#[test]
fn text_round_trip_preserves_slices() {
    for (name, body) in corpus_files() {
        let d = SlicedDiagram::parse_json(&body).unwrap_or_else(|e| panic!("{name}: {e}"));
        let reparsed = SlicedDiagram::parse_text(&d.to_text())
            .unwrap_or_else(|e| panic!("{name} text re-parse: {e}"));
        assert_eq!(d.slices(), reparsed.slices(), "{name}: text round trip");
        assert_eq!(d.kind(), reparsed.kind(), "{name}: kind inference");
    }
}

#[test]
fn every_graph_diagram_in_corpus_is_evaluable() {
    let caches = Caches::new();
    for (name, body) in corpus_files() {
        let d = SlicedDiagram::parse_json(&body).unwrap();
        if d.vertices().is_empty() {
            continue;
        }
        let g = EmbeddedGraphDiagram::new(d).unwrap_or_else(|e| panic!("{name}: {e}"));
        let value = if g.coloring.is_some() {
            spinnet::invariant::g_invariant_colored(&caches, &g)
        } else {
            spinnet::invariant::g_invariant(&caches, &g, 1)
        };
        value.unwrap_or_else(|e| panic!("{name}: evaluation failed: {e}"));
    }
}

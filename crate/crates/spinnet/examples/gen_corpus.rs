//! Regenerates the bundled diagram corpus.
//!
//! Every file is built programmatically (so it is validated by the diagram
//! constructors before it is written) and serialized with the stable JSON
//! schema. Run from the workspace root:
//!
//! ```text
//! cargo run -p spinnet --example gen_corpus [OUT_DIR]
//! ```

use spinnet::diagram::SlicedDiagram;
use spinnet::invariant::{disjoint_union, wedge_at_vertex};
use std::collections::BTreeMap;
use std::path::Path;

fn text(word: &str) -> SlicedDiagram {
    SlicedDiagram::parse_text(word).expect("corpus word must parse")
}

fn colored(word: &str, colors: &[(usize, u32)]) -> SlicedDiagram {
    let d = text(word);
    let map: BTreeMap<usize, u32> = colors.iter().copied().collect();
    SlicedDiagram::with_colors(d.kind(), d.slices().to_vec(), Some(map))
        .expect("corpus coloring must validate")
}

fn main() {
    let out = std::env::args().nth(1).unwrap_or_else(|| "corpus".into());
    let out = Path::new(&out);
    std::fs::create_dir_all(out).expect("create output directory");

    let unknot = "cup 0\ncap 0\n";
    let unknot_curl = "cup 0\ncross+ 0\ncap 0\n";
    let unlink2 = "cup 0\ncup 0\ncap 0\ncap 0\n";
    let hopf = "cup 0\ncup 1\ncross+ 0\ncross+ 0\ncap 1\ncap 0\n";
    let solomon = "cup 0\ncup 1\ncross+ 0\ncross+ 0\ncross+ 0\ncross+ 0\ncap 1\ncap 0\n";
    let trefoil = "cup 0\ncup 1\ncross+ 0\ncross+ 0\ncross+ 0\ncap 1\ncap 0\n";
    let figure_eight =
        "cup 0\ncup 1\ncup 2\ncross+ 0\ncross- 1\ncross+ 0\ncross- 1\ncap 2\ncap 1\ncap 0\n";

    let unknot_vertex = "cup 0\nvertex 0 in=2 out=0\n";
    let unknot_two_vertices = "cup 0\nvertex 0 in=1 out=1\nvertex 0 in=2 out=0\n";
    let unknot_three_vertices =
        "cup 0\nvertex 0 in=1 out=1\nvertex 0 in=1 out=1\nvertex 0 in=2 out=0\n";
    let unknot_vertex_curl = "cup 0\ncross+ 0\nvertex 0 in=2 out=0\n";
    let trefoil_vertex =
        "cup 0\ncup 1\ncross+ 0\ncross+ 0\ncross+ 0\nvertex 0 in=1 out=1\ncap 1\ncap 0\n";
    let trefoil_two_vertices = "cup 0\ncup 1\ncross+ 0\nvertex 0 in=1 out=1\ncross+ 0\ncross+ 0\nvertex 0 in=1 out=1\ncap 1\ncap 0\n";
    let figure_eight_vertex = "cup 0\ncup 1\ncup 2\ncross+ 0\ncross- 1\ncross+ 0\ncross- 1\nvertex 0 in=1 out=1\ncap 2\ncap 1\ncap 0\n";
    let hopf_vertices = "cup 0\ncup 1\ncross+ 0\ncross+ 0\nvertex 0 in=1 out=1\nvertex 1 in=1 out=1\ncap 1\ncap 0\n";
    let hopf_three_vertices = "cup 0\ncup 1\ncross+ 0\ncross+ 0\nvertex 0 in=1 out=1\nvertex 0 in=1 out=1\nvertex 1 in=1 out=1\ncap 1\ncap 0\n";
    let theta = "vertex 0 in=0 out=3\nvertex 0 in=3 out=0\n";
    let theta_decorated = "vertex 0 in=0 out=3\nvertex 1 in=1 out=1\nvertex 0 in=3 out=0\n";
    let two_vertex_cycle = "cup 0\nvertex 0 in=1 out=1\nvertex 0 in=2 out=0\n";
    // 1-skeleton of the tetrahedron: four trivalent vertices, six edges.
    let tetrahedron_graph = "vertex 0 in=0 out=3\nvertex 0 in=1 out=2\nvertex 1 in=2 out=1\nvertex 0 in=3 out=0\n";

    let mut files: Vec<(&str, SlicedDiagram)> = vec![
        ("unknot", text(unknot)),
        ("unknot_curl", text(unknot_curl)),
        ("two_component_unlink", text(unlink2)),
        ("hopf", text(hopf)),
        ("solomon", text(solomon)),
        ("trefoil", text(trefoil)),
        ("figure_eight", text(figure_eight)),
        ("unknot_vertex", text(unknot_vertex)),
        ("unknot_two_vertices", text(unknot_two_vertices)),
        ("unknot_three_vertices", text(unknot_three_vertices)),
        ("unknot_vertex_curl", text(unknot_vertex_curl)),
        ("trefoil_vertex", text(trefoil_vertex)),
        ("trefoil_two_vertices", text(trefoil_two_vertices)),
        ("figure_eight_vertex", text(figure_eight_vertex)),
        ("hopf_vertices", text(hopf_vertices)),
        ("hopf_three_vertices", text(hopf_three_vertices)),
        ("theta", text(theta)),
        ("theta_decorated", text(theta_decorated)),
        ("two_vertex_cycle", text(two_vertex_cycle)),
        ("tetrahedron_graph", text(tetrahedron_graph)),
        ("theta_colored", colored(theta, &[(0, 1), (1, 1), (2, 2)])),
        ("cycle_colored", colored(two_vertex_cycle, &[(0, 2), (1, 2)])),
    ];
    files.push((
        "theta_wedge_cycle",
        wedge_at_vertex(&text(unknot_vertex), &text(theta), 0, 1)
            .expect("wedge of corpus graphs"),
    ));
    files.push((
        "union_trefoil_theta",
        disjoint_union(&text(trefoil_vertex), &text(theta)).expect("union of corpus graphs"),
    ));

    for (name, diagram) in files {
        let path = out.join(format!("{name}.json"));
        let pretty = serde_json::to_string_pretty(&diagram.to_json()).expect("serialize");
        std::fs::write(&path, pretty + "\n").expect("write corpus file");
        println!("wrote {}", path.display());
    }
}

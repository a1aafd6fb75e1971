mod common;

use std::fs;

use common::reference::{compare_rows, compare_states, parse_trace, GOLDEN, NESTED_STATES};
use common::workspace_root;
use trunk_match::dimacs::{parse_dimacs, parse_matching, write_dimacs, write_matching};
use trunk_match::fixtures::{fixture, FIXTURE_NAMES};
use trunk_match::search::{search, SearchConfig};
use trunk_match::trace::{diff_golden, render_trace};

fn traced(name: &str) -> String {
    let (g, m) = fixture(name).unwrap();
    let v0 = g.vertex_by_label("v0").unwrap();
    let cfg = SearchConfig {
        trace: true,
        ..SearchConfig::for_graph(&g)
    };
    render_trace(&g, &search(&g, &m, v0, &cfg).unwrap().trace)
}

#[test]
fn fixture_files_match_builtin_fixtures() {
    for name in FIXTURE_NAMES {
        let dir = workspace_root().join("fixtures");
        let graph_text = fs::read_to_string(dir.join(format!("{name}.dimacs"))).unwrap();
        let matching_text = fs::read_to_string(dir.join(format!("{name}.matching"))).unwrap();
        let (g, m) = fixture(name).unwrap();
        assert_eq!(graph_text, write_dimacs(&g), "{name}");
        assert_eq!(matching_text, write_matching(&m), "{name}");
        let parsed = parse_dimacs(graph_text.as_bytes()).unwrap();
        for v in g.vertices() {
            assert_eq!(parsed.neighbors(v), g.neighbors(v), "{name}: adjacency order");
        }
        assert_eq!(parse_matching(matching_text.as_bytes(), &parsed).unwrap(), m);
    }
}

#[test]
fn golden_files_are_byte_exact() {
    for (name, file) in GOLDEN.iter().map(|(n, f, _)| (*n, *f)).chain([("fig8", "fig8.tsv")]) {
        let expected = fs::read_to_string(workspace_root().join("golden").join(file)).unwrap();
        assert_eq!(diff_golden(&expected, &traced(name)), None, "{file}");
    }
}

#[test]
fn golden_files_agree_with_reference_rows() {
    for (name, file, rows) in GOLDEN {
        let text = fs::read_to_string(workspace_root().join("golden").join(file)).unwrap();
        compare_rows(&parse_trace(&text), rows).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
    let text = fs::read_to_string(workspace_root().join("golden/fig8.tsv")).unwrap();
    compare_states(&parse_trace(&text), NESTED_STATES).unwrap();
}

#[test]
fn golden_diff_ignores_crlf_only() {
    let text = traced("fig5");
    assert_eq!(diff_golden(&text.replace('\n', "\r\n"), &text), None);
    let altered = text.replacen("even-cycle", "odd-cycle", 1);
    let (line, _, _) = diff_golden(&altered, &text).unwrap();
    assert_eq!(line, 5);
}

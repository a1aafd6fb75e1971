//! Hand-transcribed trunk states for the worked examples, written in the
//! trace rendering: path as `label parity` pairs, sprouts bottom to top.

pub struct Row {
    pub event: &'static str,
    pub path: &'static str,
    pub sprouts: &'static str,
}

const fn row(event: &'static str, path: &'static str, sprouts: &'static str) -> Row {
    Row { event, path, sprouts }
}

/// fig4, default branch: steps 1 to 8.
pub const ODD_CYCLE: &[Row] = &[
    row("init", "v0 0 v1 1", "-"),
    row("grow", "v0 0 v1 1 va 0 vb 1", "<va,ve>"),
    row("grow", "v0 0 v1 1 va 0 vb 1 vc 0 vd 1", "<va,ve>;<vc,vy>"),
    row("odd-cycle", "v0 0 v1 1 va 0 vb 1 vc 0 vd 1 ve 0 va 1", "<va,ve>;<vc,vy>"),
    row("detour", "v0 0 v1 1 va 0 vb 1 vc 0 vy 1", "<va,ve>"),
    row("dead-end", "v0 0 v1 1 va 0 vb 1 vc 0 vy 1", "<va,ve>"),
    row("detour", "v0 0 v1 1 va 0 ve 1", "-"),
    row("augment", "v0 0 v1 1 va 0 ve 1 vd 0 vx 1", "<vd,vc>"),
];

/// fig4_alt: steps 1 to 7, then 8A, 9, 10.
pub const ODD_CYCLE_ALT: &[Row] = &[
    row("init", "v0 0 v1 1", "-"),
    row("grow", "v0 0 v1 1 va 0 vb 1", "<va,ve>"),
    row("grow", "v0 0 v1 1 va 0 vb 1 vc 0 vd 1", "<va,ve>;<vc,vy>"),
    row("odd-cycle", "v0 0 v1 1 va 0 vb 1 vc 0 vd 1 ve 0 va 1", "<va,ve>;<vc,vy>"),
    row("detour", "v0 0 v1 1 va 0 vb 1 vc 0 vy 1", "<va,ve>"),
    row("dead-end", "v0 0 v1 1 va 0 vb 1 vc 0 vy 1", "<va,ve>"),
    row("detour", "v0 0 v1 1 va 0 ve 1", "-"),
    row("grow", "v0 0 v1 1 va 0 ve 1 vd 0 vc 1", "<vd,vx>"),
    row("odd-cycle", "v0 0 v1 1 va 0 ve 1 vd 0 vc 1 vb 0 va 1", "<vd,vx>"),
    row("augment", "v0 0 v1 1 va 0 ve 1 vd 0 vx 1", "-"),
];

/// fig5, default branch: steps 1 to 5.
pub const EVEN_CYCLE: &[Row] = &[
    row("init", "v0 0 v1 1", "-"),
    row("grow", "v0 0 v1 1 v2 0 va 1", "-"),
    row("grow", "v0 0 v1 1 v2 0 va 1 vb 0 vc 1", "<vb,vy>"),
    row("even-cycle", "v0 0 v1 1 v2 0 va 1 vb 0 vc 1 vd 0 va 1", "<vb,vy>;<vd,vx>"),
    row("augment", "v0 0 v1 1 v2 0 va 1 vb 0 vc 1 vd 0 vx 1", "<vb,vy>"),
];

/// fig5_alt: steps 1, 2, 3A, 4A, 5A. Step 3A adds the pair and then hits
/// the dead end, which the trace emits as two events with the same state.
pub const EVEN_CYCLE_ALT: &[Row] = &[
    row("init", "v0 0 v1 1", "-"),
    row("grow", "v0 0 v1 1 v2 0 va 1", "-"),
    row("grow", "v0 0 v1 1 v2 0 va 1 vb 0 vy 1", "<vb,vc>"),
    row("dead-end", "v0 0 v1 1 v2 0 va 1 vb 0 vy 1", "<vb,vc>"),
    row("detour", "v0 0 v1 1 v2 0 va 1 vb 0 vc 1", "-"),
    row("augment", "v0 0 v1 1 v2 0 va 1 vb 0 vc 1 vd 0 vx 1", "<vd,va>"),
];

/// The seven fig8 trunk states, in order. The trace passes through each of
/// them and ends on the last.
pub const NESTED_STATES: &[(&str, &str)] = &[
    ("v0 0 v1 1 va 0 vb 1 vc 0 vf 1 vg 0 vc 1", "<va,ve>;<vc,vg>"),
    ("v0 0 v1 1 va 0 vb 1 vc 0 vg 1", "<va,ve>"),
    ("v0 0 v1 1 va 0 vb 1 vc 0 vg 1 vf 0 vd 1 ve 0 va 1", "<va,ve>;<vf,vc>"),
    ("v0 0 v1 1 va 0 vb 1 vc 0 vg 1 vf 0 vc 1", "<va,ve>"),
    ("v0 0 v1 1 va 0 ve 1", "-"),
    ("v0 0 v1 1 va 0 ve 1 vd 0 vf 1 vg 0 vc 1 vb 0 va 1", "<vb,vh>"),
    ("v0 0 v1 1 va 0 ve 1 vd 0 vf 1 vg 0 vc 1 vb 0 vh 1", "-"),
];

pub const NESTED_PATH: &[&str] = &["v0", "v1", "va", "ve", "vd", "vf", "vg", "vc", "vb", "vh"];

/// `(fixture, golden file, expected rows)`; fig8 is checked separately.
pub const GOLDEN: &[(&str, &str, &[Row])] = &[
    ("fig4", "table1.tsv", ODD_CYCLE),
    ("fig4_alt", "table1_alt.tsv", ODD_CYCLE_ALT),
    ("fig5", "table2.tsv", EVEN_CYCLE),
    ("fig5_alt", "table2_alt.tsv", EVEN_CYCLE_ALT),
];

/// Parses a golden TSV into `(event, path, sprouts)` rows, skipping the
/// header.
pub fn parse_trace(text: &str) -> Vec<(String, String, String)> {
    text.lines()
        .skip(1)
        .filter(|l| !l.is_empty())
        .map(|l| {
            let f: Vec<&str> = l.split('\t').collect();
            (f[1].to_string(), f[2].to_string(), f[3].to_string())
        })
        .collect()
}

/// Compares parsed rows with the reference, returning the first mismatch.
pub fn compare_rows(actual: &[(String, String, String)], expected: &[Row]) -> Result<(), String> {
    if actual.len() != expected.len() {
        return Err(format!("{} rows, expected {}", actual.len(), expected.len()));
    }
    for (i, (a, e)) in actual.iter().zip(expected).enumerate() {
        if a.0 != e.event || a.1 != e.path || a.2 != e.sprouts {
            return Err(format!(
                "row {}: got {} | {} | {}, expected {} | {} | {}",
                i + 1,
                a.0,
                a.1,
                a.2,
                e.event,
                e.path,
                e.sprouts
            ));
        }
    }
    Ok(())
}

/// Checks that the reference states occur in order and the trace ends on
/// the last one.
pub fn compare_states(actual: &[(String, String, String)], states: &[(&str, &str)]) -> Result<(), String> {
    let mut next = 0;
    for a in actual {
        if next < states.len() && a.1 == states[next].0 && a.2 == states[next].1 {
            next += 1;
        }
    }
    if next < states.len() {
        return Err(format!("state {} not reached", next + 1));
    }
    let last = actual.last().ok_or("empty trace")?;
    let want = states.last().expect("non-empty reference");
    if last.0 != "augment" || last.1 != want.0 || last.2 != want.1 {
        return Err("trace does not end on the final state".into());
    }
    Ok(())
}

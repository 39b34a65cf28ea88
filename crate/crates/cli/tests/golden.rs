//! Pinned outputs. Regenerate with `UPDATE_GOLDEN=1 cargo test -p spinpic-cli --test golden`.

use std::path::PathBuf;

fn cases() -> Vec<(String, Vec<String>)> {
    let mut out = Vec::new();
    let args = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    for r in 2..=8 {
        let r = r.to_string();
        for fmt in ["json", "text", "latex"] {
            out.push((
                format!("table_r{r}.{fmt}"),
                args(&["--format", fmt, "table", "--r", &r]),
            ));
        }
    }
    for r in [2, 3, 4, 6, 8, 9, 12] {
        let case = if r % 2 == 0 { "1" } else { "2" };
        let r = r.to_string();
        for fmt in ["json", "text"] {
            out.push((
                format!("torsion_r{r}_case{case}.{fmt}"),
                args(&["--format", fmt, "torsion", "--r", &r, "--case", case]),
            ));
        }
    }
    for r in [6, 12] {
        let r = r.to_string();
        out.push((
            format!("torsion_r{r}_composite.json"),
            args(&[
                "--format",
                "json",
                "torsion",
                "--r",
                &r,
                "--case",
                "composite",
            ]),
        ));
    }
    for r in [2, 3, 5] {
        let r = r.to_string();
        for fmt in ["json", "text"] {
            out.push((
                format!("genus1_r{r}.{fmt}"),
                args(&["--format", fmt, "genus1", "--r", &r]),
            ));
        }
    }
    out
}

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("golden")
}

#[test]
fn golden_corpus() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let mut failures = Vec::new();
    for (name, argv) in cases() {
        let got = spinpic_cli::run(std::iter::once("spinpic".to_string()).chain(argv)).unwrap();
        let path = golden_dir().join(&name);
        if update {
            std::fs::write(&path, &got).unwrap();
            continue;
        }
        match std::fs::read_to_string(&path) {
            Ok(want) if want == got => {}
            Ok(_) => failures.push(format!("{name}: output differs")),
            Err(e) => failures.push(format!("{name}: {e}")),
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn table_errata_sit_on_the_two_level_eight_sub_rows() {
    for r in 2..=8 {
        let raw = std::fs::read_to_string(golden_dir().join(format!("table_r{r}.json"))).unwrap();
        let v: serde_json::Value = serde_json::from_str(&raw).unwrap();
        let errata = v["table"]["errata"]
            .as_array()
            .expect("errata array is always present");
        let at: Vec<(u64, u64)> = errata
            .iter()
            .map(|e| (e["r"].as_u64().unwrap(), e["s"].as_u64().unwrap()))
            .collect();
        let want = if r == 8 { vec![(8, 4), (8, 2)] } else { vec![] };
        assert_eq!(at, want, "r={r}");
    }
}

#[test]
fn golden_torsion_orders() {
    let read = |name: &str| -> serde_json::Value {
        serde_json::from_str(&std::fs::read_to_string(golden_dir().join(name)).unwrap()).unwrap()
    };
    let statement = |v: &serde_json::Value| v["torsion"]["certificate"]["statement"].clone();
    assert_eq!(
        statement(&read("torsion_r2_case1.json")),
        serde_json::json!({"kind": "exact", "order": 4})
    );
    assert_eq!(
        statement(&read("torsion_r3_case2.json")),
        serde_json::json!({"kind": "one_of", "orders": [3, 6]})
    );
    assert_eq!(
        statement(&read("torsion_r6_composite.json")),
        serde_json::json!({"kind": "exact", "order": 12})
    );
}

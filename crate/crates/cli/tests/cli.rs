use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tangram_cli::SolutionDocument;
use tangram_core::render::{render_sheet_svg, RenderStyle};

fn tangram(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tangram"))
        .args(args)
        .current_dir(dir)
        .env("TANGRAM_OUT_DIR", dir.join("out"))
        .env_remove("TANGRAM_NUMBERING")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn solve_prints_counts() {
    let dir = tempfile::tempdir().unwrap();
    let o = tangram(dir.path(), &["solve", "7", "--set", "japanese"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("J07 japanese canonical: 3\n"));
    assert!(dir.path().join("out/J07_japanese_canonical.json").exists());

    let o = tangram(dir.path(), &["solve", "14", "--set", "chinese"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("J14 chinese canonical: 0\n"));

    let o = tangram(dir.path(), &["solve", "J06"]);
    assert!(stdout(&o).starts_with("J06 japanese canonical: 72\n"));
}

#[test]
fn count_modes() {
    let dir = tempfile::tempdir().unwrap();
    let count = |args: &[&str]| stdout(&tangram(dir.path(), args)).trim().to_string();
    assert_eq!(count(&["count", "7"]), "3");
    assert_eq!(count(&["count", "7", "--mode", "labeled"]), "24");
    assert_eq!(count(&["count", "7", "--mode", "colored"]), "6");
    assert_eq!(count(&["count", "1x8:f/f/f/f/f/f/f/f"]), "24");
}

#[test]
fn region_key_in_any_orientation_finds_the_shape() {
    let dir = tempfile::tempdir().unwrap();
    let o = tangram(dir.path(), &["solve", "8x1:ff"]);
    // 8 wide and 1 tall: one row of eight full squares.
    let o2 = tangram(dir.path(), &["solve", "8x1:ffffffff"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o2).starts_with("J14 japanese canonical: 24"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(tangram(dir.path(), &["solve", "21"]).status.code(), Some(2));
    assert_eq!(tangram(dir.path(), &["solve", "square"]).status.code(), Some(2));
    assert_eq!(tangram(dir.path(), &["solve", "7", "--set", "dutch"]).status.code(), Some(2));
    assert_eq!(tangram(dir.path(), &["frobnicate"]).status.code(), Some(2));
    let o = tangram(dir.path(), &["solve", "2x2:ff/ff"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("16 cells"));
    assert_eq!(tangram(dir.path(), &["render", "7", "--index", "4"]).status.code(), Some(2));
}

#[test]
fn bad_numbering_file_refused() {
    let dir = tempfile::tempdir().unwrap();
    let text = tangram_core::catalog::DEFAULT_NUMBERING.replace("2x4:ff/ff/ff/ff", "2x4:ff/ff/ff/fe");
    let path = dir.path().join("numbers.txt");
    fs::write(&path, text).unwrap();
    let o = tangram(dir.path(), &["verify", "--numbering", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    let missing = tangram(dir.path(), &["verify", "--numbering", "nope.txt"]);
    assert_eq!(missing.status.code(), Some(3));
}

#[test]
fn numbering_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("numbers.txt");
    let swapped = tangram_core::catalog::DEFAULT_NUMBERING
        .replace("8 4x4:0003/003f/03ff/3fff", "8 TMP")
        .replace("10 3x4:03f/3ff/ffc/fc0", "8 3x4:03f/3ff/ffc/fc0")
        .replace("8 TMP", "10 4x4:0003/003f/03ff/3fff");
    fs::write(&path, swapped).unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_tangram"))
        .args(["census"])
        .current_dir(dir.path())
        .env("TANGRAM_NUMBERING", &path)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().any(|l| l.starts_with("J08") && l.contains("3x4:03f/3ff/ffc/fc0")));
}

#[test]
fn verify_passes_and_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let o = tangram(dir.path(), &["verify", "--json", "report.json"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("counts: 16/16 match, total 531 (expected 531)"));
    assert!(text.contains("trapezium strip: generated 60 = enumerated 60: true"));
    assert!(text.contains("parallelogram strip: generated 60 = enumerated 60: true"));
    assert!(text.contains("census: 20 shapes (pairwise non-congruent: true), 16 japanese-coverable, 13 chinese-coverable"));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.path().join("report.json")).unwrap()).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["total_actual"], 531);
    assert_eq!(v["shapes"].as_array().unwrap().len(), 16);
    assert_eq!(v["shapes"][6]["actual"], 3);
    assert_eq!(v["strips"]["generated_trapezium"], 60);
    assert_eq!(v["census"]["chinese_coverable"], 13);
}

#[test]
fn document_round_trip_and_rerender() {
    let dir = tempfile::tempdir().unwrap();
    for mode in ["canonical", "labeled", "colored"] {
        let out = format!("doc_{mode}.json");
        let o = tangram(dir.path(), &["solve", "12", "--mode", mode, "--out", &out]);
        assert_eq!(o.status.code(), Some(0));
        let text = fs::read_to_string(dir.path().join(&out)).unwrap();
        let doc = SolutionDocument::from_json(&text).unwrap();
        assert_eq!(doc.to_json(), text);
        assert_eq!(doc.counts.canonical, 4);
        let region = doc.region().unwrap();
        let style = RenderStyle::default();
        let a = render_sheet_svg(&doc.solutions(), &region, 4, &style).unwrap();
        let again = SolutionDocument::from_json(&doc.to_json()).unwrap();
        let b = render_sheet_svg(&again.solutions(), &region, 4, &style).unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn tampered_document_fails_to_load() {
    let dir = tempfile::tempdir().unwrap();
    tangram(dir.path(), &["solve", "7", "--out", "d.json"]);
    let text = fs::read_to_string(dir.path().join("d.json")).unwrap();
    let tampered = text.replacen("\"Tz\"", "\"Tr\"", 1);
    assert!(SolutionDocument::from_json(&tampered).is_err());
    let extra = text.replacen("\"schema_version\": 1", "\"schema_version\": 1, \"x\": 0", 1);
    assert!(SolutionDocument::from_json(&extra).is_err());
}

#[test]
fn render_files() {
    let dir = tempfile::tempdir().unwrap();
    let o = tangram(dir.path(), &["render", "14", "--sheet"]);
    assert_eq!(o.status.code(), Some(0));
    let sheet = fs::read_to_string(dir.path().join("out/J14_sheet.svg")).unwrap();
    assert_eq!(sheet.matches(r#"<g class="panel""#).count(), 24);
    assert_eq!(tangram(dir.path(), &["render", "7", "--index", "2"]).status.code(), Some(0));
    let one = fs::read_to_string(dir.path().join("out/J07_canonical_2.svg")).unwrap();
    assert_eq!(one.matches("<path").count(), 7);
    assert_eq!(tangram(dir.path(), &["render", "7", "--mode", "colored", "--index", "6"]).status.code(), Some(0));
    assert!(dir.path().join("out/J07_colored_6.svg").exists());
}

#[test]
fn census_sheet() {
    let dir = tempfile::tempdir().unwrap();
    let o = tangram(dir.path(), &["census", "--svg"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("20 shapes, 16 japanese-coverable, 13 chinese-coverable"));
    assert_eq!(text.lines().filter(|l| l.starts_with('J')).count(), 20);
    let svg = fs::read_to_string(dir.path().join("out/census.svg")).unwrap();
    assert_eq!(svg.matches(r#"class="shape""#).count(), 20);
}

#[test]
fn strips_report() {
    let dir = tempfile::tempdir().unwrap();
    let o = tangram(dir.path(), &["strips", "--verify", "--json", "strips.json"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("twin pairs: 12 (self-twins 0, involution true)"));
    assert!(text.contains("result: PASS"));
    assert_eq!(text.lines().filter(|l| l.contains(" twin ")).count(), 24);
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.path().join("strips.json")).unwrap()).unwrap();
    assert_eq!(v["twin_pairs"], 12);
}

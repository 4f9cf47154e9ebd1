use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_linklab"))
}

fn scenes() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("scenes")
}

fn write_scene(dir: &Path, text: &str) -> PathBuf {
    let p = dir.join("scene.toml");
    std::fs::write(&p, text).unwrap();
    p
}

fn run(scene: &Path, out: &Path, extra: &[&str]) -> Output {
    bin().arg("run").arg(scene).arg("--out").arg(out).args(extra).output().unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

const HOPF_LOOPS: &str = r#"
[loops.a]
kind = "hopf"
member = 1

[loops.b]
kind = "hopf"
member = 2
"#;

#[test]
fn shipped_scenes_validate() {
    let mut n = 0;
    for entry in std::fs::read_dir(scenes()).unwrap() {
        let path = entry.unwrap().path();
        let o = bin().arg("validate").arg(&path).output().unwrap();
        assert!(o.status.success(), "{}: {}", path.display(), stderr(&o));
        n += 1;
    }
    assert!(n >= 8);
}

#[test]
fn missing_mollifier_is_named() {
    let dir = tempfile::tempdir().unwrap();
    let scene = format!(
        "experiment = \"commute\"\n{HOPF_LOOPS}\n[model]\ncomponents = [{{ mass = 0.0, c2 = 1.0 }}]\n\n[commute]\npair = [\"a\", \"b\"]\nmollifier = \"s\"\n"
    );
    let o = bin().arg("validate").arg(write_scene(dir.path(), &scene)).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("commute.mollifier: unknown mollifier 's'"), "{}", stderr(&o));
}

#[test]
fn zero_radius_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let scene = "experiment = \"link\"\n[loops.a]\nkind = \"circle\"\nradius = 0.0\n\n[loops.b]\nkind = \"hopf\"\nmember = 2\n\n[link]\npair = [\"a\", \"b\"]\n";
    let o = bin().arg("validate").arg(write_scene(dir.path(), scene)).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("loops.a.radius: must be positive"), "{}", stderr(&o));
}

#[test]
fn unknown_fields_and_sections_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let scene = format!("experiment = \"link\"\n{HOPF_LOOPS}\n[link]\npair = [\"a\", \"b\"]\nexpected = 1\n");
    let o = bin().arg("validate").arg(write_scene(dir.path(), &scene)).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("expected"), "{}", stderr(&o));

    let scene = format!("experiment = \"commute\"\n{HOPF_LOOPS}");
    let o = bin().arg("validate").arg(write_scene(dir.path(), &scene)).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("commute: section required"), "{}", stderr(&o));
}

#[test]
fn link_scene_writes_report_and_table() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&scenes().join("link.toml"), dir.path(), &[]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let report = std::fs::read_to_string(dir.path().join("report.txt")).unwrap();
    assert!(report.contains("sha256: "));
    assert!(report.contains("summary: 2 checks, 0 failed: PASS"), "{report}");
    let csv = std::fs::read_to_string(dir.path().join("table.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("parameter,value_re,value_im,error"));
    assert!(lines.next().unwrap().starts_with("gauss,1.0000000000000"), "{csv}");
}

#[test]
fn wrong_expectation_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let scene = format!("experiment = \"link\"\n{HOPF_LOOPS}\n[link]\npair = [\"a\", \"b\"]\nexpect = 2\n");
    let o = run(&write_scene(dir.path(), &scene), dir.path(), &[]);
    assert_eq!(o.status.code(), Some(1));
    let report = std::fs::read_to_string(dir.path().join("report.txt")).unwrap();
    assert!(report.contains("check linking-number: expected 2 measured 1"), "{report}");
}

#[test]
fn negative_control_scene_fails_its_tolerance() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&scenes().join("negative-control.toml"), dir.path(), &[]);
    assert_eq!(o.status.code(), Some(1), "{}", stderr(&o));
}

#[test]
fn under_resolved_grid_is_a_numeric_failure() {
    let dir = tempfile::tempdir().unwrap();
    let scene = format!(
        "experiment = \"commute\"\n{HOPF_LOOPS}\n[mollifiers.s]\nkind = \"gaussian\"\nwidth = 0.1\n\n[model]\ncomponents = [{{ mass = 0.0, c2 = 1.0 }}]\n\n[grid]\nk-max = 39.0\nradial = 12\npolar = 8\nazimuth = 12\n\n[commute]\npair = [\"a\", \"b\"]\nmollifier = \"s\"\n"
    );
    let o = run(&write_scene(dir.path(), &scene), dir.path(), &[]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
    let report = std::fs::read_to_string(dir.path().join("report.txt")).unwrap();
    assert!(report.contains("error: ") && report.ends_with("summary: FAIL\n"), "{report}");
}

#[test]
fn table_does_not_depend_on_worker_count() {
    let scene = scenes().join("identities.toml");
    let tables: Vec<Vec<u8>> = ["1", "3"]
        .iter()
        .map(|w| {
            let dir = tempfile::tempdir().unwrap();
            let o = run(&scene, dir.path(), &["--workers", w]);
            assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
            std::fs::read(dir.path().join("table.csv")).unwrap()
        })
        .collect();
    assert_eq!(tables[0], tables[1]);
}

#[test]
fn light_mass_sweep_passes() {
    let dir = tempfile::tempdir().unwrap();
    let scene = r#"
experiment = "sweep-mass"

[loops.a]
kind = "hopf"
member = 1
tilt = [0.1, 0.0, 0.05]

[loops.b]
kind = "hopf"
member = 2

[mollifiers.s]
kind = "gaussian"
width = 0.07

[sweep-mass]
pair = ["a", "b"]
mollifier = "s"
masses = [0.0, 1.0]
"#;
    let o = run(&write_scene(dir.path(), scene), dir.path(), &[]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
}

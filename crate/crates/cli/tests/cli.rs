use std::io::Write;
use std::process::{Command, Output, Stdio};

const TREFOIL: &str = "O1+ U2+ O3+ U1+ O2+ U3+";

fn weldkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weldkit"))
        .args(args)
        .env_remove("WELDKIT_BUDGET")
        .output()
        .expect("binary runs")
}

fn weldkit_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_weldkit"))
        .args(args)
        .env_remove("WELDKIT_BUDGET")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap().trim_end().to_string()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("single JSON document")
}

#[test]
fn colorings_of_the_trefoil() {
    let o = weldkit(&["group", "colorings", "--m", "3", TREFOIL]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "modulus 3: total 9, nontrivial true");
    let j = json(&weldkit(&["--json", "group", "colorings", "--m", "3", TREFOIL]));
    assert_eq!(j["total_count"], 9);
    assert_eq!(j["nontrivial_exists"], true);
}

#[test]
fn family_piped_into_strict_verdict() {
    let fam = weldkit(&["family", "torus", "--n", "3", "--weld-two", "--m1", "1"]);
    assert_eq!(fam.status.code(), Some(0));
    let v = weldkit_stdin(&["verdict", "--strict", "-"], &stdout(&fam));
    assert_eq!(v.status.code(), Some(0));
    assert_eq!(stdout(&v), "Knotted(Dihedral(3))");
}

#[test]
fn strict_unknown_exits_two() {
    let fam = weldkit(&["family", "torus", "--n", "5", "--weld-two", "--m1", "4"]);
    let d = stdout(&fam);
    let v = weldkit(&["verdict", &d]);
    assert_eq!(v.status.code(), Some(0));
    assert!(stdout(&v).starts_with("Unknown"));
    assert_eq!(weldkit(&["verdict", "--strict", &d]).status.code(), Some(2));
}

#[test]
fn table_json_document() {
    let o = weldkit(&["table", "six", "--catalog", "../../data/rolfsen.json", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let j = json(&o);
    let knots = j["knots"].as_array().unwrap();
    assert_eq!(knots.len(), 3);
    assert_eq!(knots[0]["name"], "6_1");
    assert_eq!(knots[0]["sizes"][1]["summary"]["non_z_certified"], 4);
    assert_eq!(j["reference"].as_array().unwrap().len(), 3);
}

#[test]
fn errors_name_the_operation() {
    let o = weldkit(&["weld", "O1+ U1+", "--crossings", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(String::from_utf8_lossy(&o.stderr).trim(), "weldkit: weld: crossing 2 is not in the diagram");
    let o = weldkit(&["canon", "O1+ O1+"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("weldkit: canon: "));
    assert_eq!(weldkit(&["no-such-command"]).status.code(), Some(1));
    let o = weldkit(&["table", "six", "--catalog", "/nonexistent.json"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn diagram_inputs() {
    assert_eq!(stdout(&weldkit(&["canon", "O5- O9+ U5- U9+"])), "O1+ U2- U1+ O2-");
    assert_eq!(stdout(&weldkit(&["canon", ""])), "");
    let dir = std::env::temp_dir().join(format!("weldkit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("trefoil.txt");
    std::fs::write(&path, format!("{TREFOIL}\n")).unwrap();
    assert_eq!(stdout(&weldkit(&["canon", path.to_str().unwrap()])), TREFOIL);
    assert_eq!(stdout(&weldkit_stdin(&["canon", "-"], TREFOIL)), TREFOIL);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn budget_flag_beats_environment() {
    let d = "O1+ O3+ U1+ U3+";
    let run = |env: Option<&str>, flag: Option<&str>| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_weldkit"));
        c.args(["--json", "simplify", d]);
        if let Some(f) = flag {
            c.args(["--budget", f]);
        }
        match env {
            Some(e) => c.env("WELDKIT_BUDGET", e),
            None => c.env_remove("WELDKIT_BUDGET"),
        };
        json(&c.output().unwrap())
    };
    assert_eq!(run(None, None)["result"], "");
    let starved = run(Some("1"), None);
    assert_eq!(starved["budget_exhausted"], true);
    assert_eq!(starved["states_explored"], 1);
    assert_eq!(run(Some("1"), Some("1000"))["result"], "");
}

#[test]
fn other_subcommands() {
    assert_eq!(stdout(&weldkit(&["weld", TREFOIL, "--crossings", "2"])), "O1+ O3+ U1+ U3+");
    assert_eq!(stdout(&weldkit(&["descending", "O1+ O3+ O5+ U1+ U3+ U5+"])), "descending from basepoint 0");
    assert_eq!(stdout(&weldkit(&["descending", TREFOIL])), "not descending");
    assert!(stdout(&weldkit(&["warping", TREFOIL])).starts_with("d(D) = 1, d(-D) = 1"));
    assert_eq!(stdout(&weldkit(&["uw", TREFOIL])), "1 <= u_w <= 1 (0 unresolved subsets)");
    assert_eq!(stdout(&weldkit(&["group", "tietze", "O1+ O3+ U1+ U3+"])), "< a | >");
    assert_eq!(stdout(&weldkit(&["group", "abelian", TREFOIL])), "divisors (1, 1, 0), free rank 1");
    assert_eq!(stdout(&weldkit(&["group", "alexander", TREFOIL])), "t^2 - t + 1");
    let w = json(&weldkit(&["--json", "group", "wirtinger", TREFOIL]));
    assert_eq!(w["presentation"]["generators"].as_array().unwrap().len(), 3);
    assert_eq!(stdout(&weldkit(&["family", "twist", "--n", "2"])), "O1+ U2+ O4- U3- O2+ U1+ O3- U4-");
    assert_eq!(weldkit(&["family", "twist", "--n", "3", "--weld-two"]).status.code(), Some(1));
    let names = stdout(&weldkit(&["catalog", "list"]));
    assert_eq!(names.lines().count(), 7);
    let e = json(&weldkit(&["--json", "catalog", "show", "3_1"]));
    assert_eq!(e["known_unknotting_number"], 1);
    assert_eq!(weldkit(&["catalog", "show", "9_42"]).status.code(), Some(1));
    let p = json(&weldkit(&["--json", "parse", TREFOIL]));
    assert_eq!(p["crossings"], 3);
}

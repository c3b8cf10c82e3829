use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weyl-mirror")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn without_elapsed(json: &str) -> String {
    json.lines().filter(|l| !l.contains("\"elapsed_ms\"")).collect::<Vec<_>>().join("\n")
}

#[test]
fn sadm_prints_the_table_row() {
    let o = run(&["sadm", "--family", "E", "--rank", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "D=12 |S_adm|=151\n");
    let o = run(&["sadm", "--family", "E8"]);
    assert_eq!(stdout(&o), "D=60 |S_adm|=434\n");
}

#[test]
fn d4_mirror_exits_zero() {
    let o = run(&["mirror", "--family", "D", "--rank", "4", "--seed", "7", "--points", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("PASS"));
}

#[test]
fn e7_duality_without_data_is_a_usage_error() {
    let o = run(&["duality", "--family", "E", "--rank", "7"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("prepotential data required"));
}

#[test]
fn unknown_subcommand_and_bad_kbar() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["sadm", "--family", "D", "--rank", "5", "--kbar", "1"]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn same_seed_gives_the_same_report() {
    let args = ["--json", "mirror", "--family", "A", "--rank", "3", "--kbar", "2", "--points", "3", "--seed", "11"];
    let a = run(&args);
    let b = run(&["--threads", "1"].iter().chain(args.iter()).copied().collect::<Vec<_>>());
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(without_elapsed(&stdout(&a)), without_elapsed(&stdout(&b)));
    let c = run(&["--json", "mirror", "--family", "A", "--rank", "3", "--kbar", "2", "--points", "3", "--seed", "12"]);
    assert_ne!(without_elapsed(&stdout(&a)), without_elapsed(&stdout(&c)));
}

#[test]
fn saved_reports_render_again() {
    let dir = std::env::temp_dir().join(format!("weyl-mirror-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("lemma.json");
    let p = path.to_str().unwrap();
    let o = run(&["-o", p, "lemma-d", "--rank", "4", "--points", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let again = run(&["report", p]);
    assert_eq!(again.status.code(), Some(0));
    assert_eq!(without_elapsed(&stdout(&again)).split(':').next(), without_elapsed(&stdout(&o)).split(':').next());
    std::fs::write(&path, "{}").unwrap();
    assert_eq!(run(&["report", p]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn wdvv_of_the_builtin_potential() {
    let o = run(&["wdvv", "--points", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("WDVV rank 6: unit t3"));
}

#[test]
fn sampled_e6_duality_exits_zero() {
    let o = run(&["duality", "--family", "E6", "--points", "1", "--mismatches-only"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("UNCERTIFIED\n"));
}

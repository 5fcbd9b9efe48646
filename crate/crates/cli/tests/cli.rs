use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_ribbon-genus"));
    c.env_remove("RIBBON_GENUS_SEED");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_str(stdout(o).trim()).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn corpus_file() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures/corpus.txt")
}

#[test]
fn genus_of_the_z6_presentation() {
    let o = run(&["genus", "<x1,x2 | x1^2 x2^2, x2^6>"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!((v["schema"].as_u64(), v["genus"].as_u64(), v["convention"].as_str()), (Some(1), Some(1), Some("B")));
}

#[test]
fn convention_flag_switches_the_surface() {
    let v = json(&run(&["--convention", "A", "genus", "<x1,x2 | x1^2 x2^2, x2^6>"]));
    assert_eq!(v["genus"], 2);
    let v = json(&run(&["--convention", "b", "genus", "<x1,x2 | x1^2 x2^2, x2^6>"]));
    assert_eq!(v["genus"], 1);
}

#[test]
fn unknown_flags_exit_with_one() {
    assert_eq!(run(&["--convention", "C", "genus", "<a | a>"]).status.code(), Some(1));
    assert_eq!(run(&["genus", "--bogus"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn pairing_count_is_exact() {
    let v = json(&run(&["facepair", "count", "--n", "2"]));
    assert_eq!(v["pairings"], 27);
    // 3^30 * 59!! overflows u64; the count stays an exact integer.
    let v = json(&run(&["facepair", "count", "--n", "30"]));
    let digits = v["pairings"].to_string();
    assert_eq!(digits, "6015234270654251259173563032289007660371768955689921875");
}

#[test]
fn report_on_the_free_group() {
    let v = json(&run(&["report", "<a,b | >"]));
    assert_eq!(v["t_genus"], 0);
    assert_eq!(v["shuffle_min"]["genus"], 0);
    assert_eq!(v["link_genus"]["upper"], 0);
    assert_eq!(v["chain_checked"], true);
}

#[test]
fn repeated_runs_are_byte_identical() {
    let args = ["--budget", "500", "--seed", "9", "report", "<a,b | a^2, a^2 b^2, b^6>"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn seed_is_read_from_the_environment() {
    let args = ["--budget", "300", "shuffle-min", "<a,b | a^2, a^2 b^2, b^6>"];
    let flag = bin().args(["--seed", "5"]).args(args).output().unwrap();
    let env = bin().env("RIBBON_GENUS_SEED", "5").args(args).output().unwrap();
    assert_eq!(flag.stdout, env.stdout);
}

#[test]
fn require_exact_exits_with_two_on_a_bracket() {
    let p = "<a,b | a^2, a^2 b^2, b^6>";
    let o = run(&["--require-exact", "--budget", "10", "shuffle-min", p]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(json(&o)["exact"], false);
    let o = run(&["--require-exact", "shuffle-min", p]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["genus"], 1);
}

#[test]
fn parse_errors_point_at_the_column() {
    let o = run(&["genus", "<a,b | a^>"]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("column 10"), "{err}");
    assert!(err.lines().last().unwrap().trim_end().ends_with('^'), "{err}");
}

#[test]
fn batch_csv_does_not_depend_on_thread_count() {
    let file = corpus_file();
    let file = file.to_str().unwrap();
    let one = run(&["--format", "csv", "--jobs", "1", "genus", "--file", file]);
    let two = run(&["--format", "csv", "--jobs", "2", "genus", "--file", file]);
    assert!(one.status.success());
    assert_eq!(one.stdout, two.stdout);
    let text = stdout(&one);
    assert!(text.starts_with("line,input,genus"));
    assert_eq!(text.lines().count(), 31);
}

#[test]
fn batch_json_carries_line_numbers_and_errors() {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("batch.txt");
    std::fs::write(&path, "# two inputs\n<a | a^6>\n\n<a | a^>\n").unwrap();
    let o = run(&["genus", "--file", path.to_str().unwrap()]);
    let v = json(&o);
    let rows = v["results"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!((rows[0]["line"].as_u64(), rows[1]["line"].as_u64()), (Some(2), Some(4)));
    assert!(rows[0]["result"].is_object());
    assert!(rows[1]["error"].is_string());
}

#[test]
fn corpus_round_trips_through_normalize() {
    let text = std::fs::read_to_string(corpus_file()).unwrap();
    for line in text.lines().filter(|l| l.starts_with('<')) {
        let o = run(&["genus", line]);
        assert!(o.status.success(), "{line}");
        let v = json(&o);
        let again = json(&run(&["genus", v["presentation"].as_str().unwrap()]));
        assert_eq!(v, again, "{line}");
    }
}

#[test]
fn version_names_the_default_convention() {
    let text = stdout(&run(&["--version"]));
    assert!(text.contains("convention B"), "{text}");
}

#[test]
fn tetrahedron_census_has_one_row_per_pairing() {
    let o = run(&["--format", "csv", "facepair", "census"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("id,pairs,codes"));
    assert_eq!(lines.count(), 27);
    let v = json(&run(&["facepair", "census", "--sphere", "pillow"]));
    assert_eq!(v["rows"].as_array().unwrap().len(), 3);
}

#[test]
fn export_dot_writes_an_undirected_graph() {
    let o = run(&["export-dot", "<a | a^6>"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("graph ribbon {"));
    assert!(text.trim_end().ends_with('}'));
}

#[test]
fn degree3_normalization_keeps_genus() {
    let p = "<a,b | a b^2 a^-1 b^-3>";
    let v = json(&run(&["normalize", "deg3", p]));
    assert_eq!(v["genus_before"], v["genus_after"]);
    let out = v["output"].as_str().unwrap();
    assert_eq!(json(&run(&["genus", out]))["genus"], json(&run(&["genus", p]))["genus"]);
}

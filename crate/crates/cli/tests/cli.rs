//! End-to-end runs of the `cechss` binary.

use std::process::{Command, Output};

fn cechss(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cechss"))
        .args(args)
        .env_remove("CECHSS_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn odd_sphere_table_is_byte_exact() {
    let o = cechss(&["e2", "--algebra", "sphere:5", "--ring", "Q", "--max-degree", "9"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let expected = "\
-3\t5\tk^1
-1\t4\tk^1
-6\t10\tk^2
0\t4\tk^1
-5\t10\tk^1
-4\t9\tk^1
0\t5\tk^1
-9\t15\tk^3
-3\t9\tk^1
-8\t15\tk^2
-7\t14\tk^2
-3\t10\tk^1
-12\t20\tk^6
-6\t14\tk^3
-1\t9\tk^1
-11\t20\tk^5
-10\t19\tk^3
-6\t15\tk^2
-5\t14\tk^1
-3\t12\tk^1
0\t9\tk^1
";
    assert_eq!(stdout(&o), expected);
    // restricted to q ≤ 2d the table has eleven nonzero rows
    let low: Vec<_> = expected
        .lines()
        .filter(|l| l.split('\t').nth(1).unwrap().parse::<usize>().unwrap() <= 10)
        .collect();
    assert_eq!(low.len(), 11);
}

#[test]
fn rows_are_sorted_by_total_degree_then_p() {
    let o = cechss(&["e2", "-a", "product_spheres:13,8", "-r", "Z", "-t", "24"]);
    assert!(o.status.success());
    let keys: Vec<(i64, i64)> = stdout(&o)
        .lines()
        .map(|l| {
            let mut f = l.split('\t');
            let p: i64 = f.next().unwrap().parse().unwrap();
            let q: i64 = f.next().unwrap().parse().unwrap();
            (p + q, p)
        })
        .collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    assert!(stdout(&o).contains("-1\t21\tZ^1 + Z/2\n"));
}

#[test]
fn parallel_and_serial_output_agree() {
    let args = ["e2", "-a", "product_spheres:6,8", "-r", "F3", "-t", "20"];
    let serial = cechss(&args);
    let mut parallel = args.to_vec();
    parallel.push("--parallel");
    let capped = Command::new(env!("CARGO_BIN_EXE_cechss"))
        .args(&parallel)
        .env("CECHSS_THREADS", "2")
        .output()
        .unwrap();
    assert!(serial.status.success() && capped.status.success());
    assert_eq!(serial.stdout, capped.stdout);
    assert_eq!(serial.stdout, cechss(&parallel).stdout);
}

#[test]
fn bad_thread_cap_is_a_validation_error() {
    let o = Command::new(env!("CARGO_BIN_EXE_cechss"))
        .args(["e2", "-a", "sphere:5", "--parallel"])
        .env("CECHSS_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("CECHSS_THREADS"));
}

#[test]
fn composite_field_order_is_rejected() {
    let o = cechss(&["e2", "--ring", "F4"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("4 is not prime"), "{}", stderr(&o));
}

#[test]
fn unsupported_ring_exits_with_two() {
    // χ(S⁶) = 2 is neither zero nor a unit in ℤ
    let o = cechss(&["e2", "-a", "sphere:6", "-r", "Z", "-t", "5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("χ = 2"), "{}", stderr(&o));
}

#[test]
fn unknown_builtin_and_missing_file_exit_with_one() {
    assert_eq!(cechss(&["e2", "-a", "sphere:x"]).status.code(), Some(1));
    let o = cechss(&["e2", "-a", "no/such/algebra.json"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("no/such/algebra.json"));
}

#[test]
fn d1_dump_has_codomain_header_and_domain_rows() {
    let o = cechss(&["d1", "-a", "product_spheres:13,8", "-r", "Q", "--bidegree", "-3,21"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o), "(-3,21)\tg_01\ta_1b_2\tb_1a_2\ng_12\t0\t1\t-1\n# rank 1\n");
    let o = cechss(&["d1", "-a", "product_spheres:13,8", "-r", "Z", "--bidegree=-2,21"]);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("(-2,21)\tab_1\ta_0b_1\tb_0a_1"));
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 4);
    assert!(text.ends_with("# rank 2\n"));
}

#[test]
fn four_manifold_verdicts() {
    let o = cechss(&["fourmanifold", "-a", "four_manifold:[[1,0],[0,1]]", "-r", "F2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).ends_with("criterion: satisfied\n"));
    assert!(stdout(&o).contains("E2(-1,2): k^2\n"));
    let o = cechss(&["fourmanifold", "-a", "four_manifold:[[0,1],[1,0]]", "-r", "F2"]);
    assert!(stdout(&o).ends_with("criterion: fails\n"));
    assert!(stdout(&o).contains("E2(-1,2): k^2\n"));
}

#[test]
fn oracle_reports_agreement() {
    let o = cechss(&["oracle", "-a", "product_spheres:13,8", "-r", "Z", "--max-vertices", "4"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("all slices agree"));
}

#[test]
fn selftest_passes() {
    let o = cechss(&["selftest"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).ends_with("selftest passed\n"));
    let o = cechss(&["selftest", "-a", "sphere:7", "-r", "F5"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("sphere:7 over F5"));
}

#[test]
fn output_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.tsv");
    let args = ["e2", "-a", "sphere:6", "-r", "F3", "-t", "11"];
    let mut with_file = args.to_vec();
    with_file.extend(["-o", path.to_str().unwrap()]);
    let o = cechss(&with_file);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), cechss(&args).stdout);
}

#[test]
fn algebra_files_are_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cp2sharp.json");
    std::fs::write(
        &path,
        r#"{
  "name": "cp2 # cp2",
  "dimension": 4,
  "generators": [
    {"name": "e1", "degree": 2},
    {"name": "e2", "degree": 2},
    {"name": "w", "degree": 4}
  ],
  "products": [
    {"left": "e1", "right": "e1", "result": [{"coeff": 1, "name": "w"}]},
    {"left": "e2", "right": "e2", "result": [{"coeff": "1", "name": "w"}]}
  ],
  "orientation": {"top_class": "w"}
}
"#,
    )
    .unwrap();
    let from_file = cechss(&["fourmanifold", "-a", path.to_str().unwrap(), "-r", "F2"]);
    assert_eq!(from_file.status.code(), Some(0), "{}", stderr(&from_file));
    let builtin = cechss(&["fourmanifold", "-a", "four_manifold:[[1,0],[0,1]]", "-r", "F2"]);
    assert_eq!(from_file.stdout, builtin.stdout);

    // an orientation class of degree 2 in a 4-dimensional algebra
    std::fs::write(
        &path,
        r#"{"name": "x", "dimension": 4, "generators": [{"name": "e", "degree": 2}],
            "products": [], "orientation": {"top_class": "e"}}"#,
    )
    .unwrap();
    let o = cechss(&["e2", "-a", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));

    std::fs::write(&path, "{\"name\": \"x\",\n \"dimension\": 4,\n \"colour\": 1}").unwrap();
    let o = cechss(&["e2", "-a", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));
}

#[test]
fn stability_and_labels_are_appended() {
    let o = cechss(&["e2", "-a", "sphere:5", "-t", "5", "--stability", "--emit-labels"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("#\t-3\t5\tg_12\n"));
    assert!(text.contains("(-3,5)\tk^1\tunstable ((-1,4))\tmust die\n"));
    assert!(text.contains("H^1 = 0\n"));
}

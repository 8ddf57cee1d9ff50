use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_exceptional"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn factor_text_output() {
    let o = run(&["factor", "--p", "2", "--q", "7"]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        "p = 2, q = 7\ngcd = X^3 + X + 1\nX^7 - 1 = (X^3 + X^2 + 1)(X^4 + X^3 + X^2 + 1)\nverified = true\n"
    );
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["classify", "--p", "3", "--q", "3"]).status.code(), Some(2));
    assert_eq!(run(&["classify", "--p", "4", "--q", "7"]).status.code(), Some(2));
    assert_eq!(run(&["exact", "--p", "3"]).status.code(), Some(2));
    assert_eq!(run(&["nonsense"]).status.code(), Some(2));
}

#[test]
fn budget_overrun_exits_one_with_partial_list() {
    let o = run(&["enumerate", "--p", "2", "--x", "300", "--gcd-budget", "100"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("E'(2) up to 100: {7, 17, 23, 31, 41, 43, 47, 71, 73, 79, 89, 97}"));
}

#[test]
fn classify_csv_and_json() {
    let o = run(&["classify", "--p", "2", "--q", "7", "--gcd", "--format", "csv"]);
    assert_eq!(
        stdout(&o),
        "p,q,f,r,residue_4p,in_E2,in_Eprime,norm2\n2,7,3,2,7,true,true,2\n"
    );
    let o = run(&["classify", "--p", "3", "--q", "13", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["f"], 3);
    assert_eq!(v[0]["r"], 4);
    assert_eq!(v[0]["in_E2"], false);
}

#[test]
fn exact_range_flags_members_outside_e_prime() {
    let o = run(&["exact", "--p", "3", "--x", "120", "--format", "csv"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("3,67,member,bipartitions,false\n"));
    assert!(text.contains("3,103,member,bipartitions,false\n"));
}

#[test]
fn output_is_identical_across_thread_counts() {
    let args = ["enumerate", "--p", "3", "--x", "800"];
    let one = run(&[&args[..], &["--threads", "1"]].concat());
    let many = run(&[&args[..], &["--threads", "4"]].concat());
    assert!(one.status.success());
    assert_eq!(one.stdout, many.stdout);
}

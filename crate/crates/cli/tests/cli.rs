use std::process::Command;

use schurkit::homalg::ExtTable;

fn run(args: &str) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_schurkit"))
        .args(args.split_whitespace())
        .env_remove("SCHURKIT_CACHE")
        .output()
        .expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn blocks() {
    let (code, out) = run("blocks -p 5 -n 2 -d 5");
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 2);
    assert!(out.contains("(2,1,1,1) (1,1,1,1,1)"));
    let (_, out) = run("blocks -p 3 -n 2 -d 3");
    assert_eq!(out.lines().count(), 1);
    // below p every label is alone in its block
    let (_, out) = run("blocks -p 5 -n 2 -d 2");
    assert_eq!(out.lines().count(), 2);
}

#[test]
fn ext_backends() {
    let (code, out) = run("ext closed F0 S1 -n 2");
    assert_eq!(code, 0);
    assert!(out.contains("q=1:1") && !out.contains("q=0"));
    let (code, out) = run("ext brute F0 F0 -p 3 -n 2 --qmax 4");
    assert_eq!(code, 0);
    assert!(out.contains("dims: 1,0,1,0,0"));
    let (code, out) = run("ext --compare S0 W0 -p 3 -n 2");
    assert_eq!(code, 0);
    assert!(out.trim_end().ends_with("MATCH"));
}

#[test]
fn ext_json_round_trips() {
    let (code, out) = run("ext brute F0 F0 -p 3 -n 2 --qmax 4 --format json");
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let t: ExtTable = serde_json::from_value(v["table"].clone()).unwrap();
    assert_eq!(t.as_vec(), vec![1, 0, 1, 0, 0]);
    assert_eq!(ExtTable::from_json(&t.to_json().unwrap()).unwrap(), t);
    let (_, csv) = run("ext closed F0 F0 -n 2 --format csv");
    assert_eq!(csv.lines().next(), Some("backend,a,b,q,dim"));
    assert!(csv.lines().any(|l| l == "closed,F0,F0,2,1"));
}

#[test]
fn sw_and_yoneda() {
    let (code, out) = run("sw hat 1,1,1 -n 2 -k 3");
    assert_eq!((code, out.trim()), (0, "1,1,1"));
    let (code, _) = run("sw char 2,1 -n 2 -k 3");
    assert_eq!(code, 0);
    let (code, out) = run("sw ext S(1) S(1) -n 2 -k 2 -p 3");
    assert_eq!(code, 0);
    assert!(out.contains("MATCH"));
    let (code, out) = run("yoneda -n 2 --table --format json");
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["basis"].as_array().unwrap().len(), 5);
    assert!(v["products"].as_array().unwrap().iter().any(|r| r == &serde_json::json!(["b1_01", "b1_10", "b2_00"])));
    let (_, out) = run("yoneda -n 2 b2_00*b2_00");
    assert!(out.contains("b2_00 * b2_00 = 0"));
}

#[test]
fn derived_functors() {
    let (code, out) = run("rs F0 -p 3 -n 2");
    assert_eq!(code, 0);
    assert!(out.contains("computed: 0,1,0,0,0"));
    let (code, out) = run("rjstar F0 -p 3 -n 2");
    assert_eq!(code, 0);
    assert!(out.contains("computed: 3,1,0,0"));
}

#[test]
fn characters_and_modules() {
    let (code, out) = run("character 2,1 -n 2");
    assert_eq!(code, 0);
    assert!(out.contains("dimension: 2"));
    let (code, out) = run("character 2,1 -n 2 -p 3 --simple");
    assert_eq!(code, 0);
    assert!(out.contains("dimension: 2"));
    let (code, out) = run("module W0 -p 3 -n 2 --dump-full --format json");
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    // char W_0 = char F_0 + char F_1 on k^2
    assert_eq!(v["dim"], 4);
    assert!(!v["generators"].as_array().unwrap().is_empty());
}

#[test]
fn verify_suite() {
    let (code, out) = run("verify --suite p3n2");
    assert_eq!(code, 0);
    assert_eq!(out.lines().filter(|l| l.contains("PASS")).count(), 10);
    let (code, _) = run("verify --suite p3n2 --criterion 8 --format csv");
    assert_eq!(code, 0);
}

#[test]
fn exit_codes() {
    assert_eq!(run("ext closed F0 S1").0, 2);
    assert_eq!(run("ext bogus F0 S1 -n 2").0, 2);
    assert_eq!(run("verify --suite nope").0, 2);
    assert_eq!(run("blocks -p 4 -n 2").0, 2);
    assert_eq!(run("ext closed X0 S1 -n 2").0, 2);
    assert_eq!(run("frobnicate").0, 2);
    // a tiny budget trips the resource guard
    assert_eq!(run("ext brute F0 F0 -p 3 -n 2 --budget 1").0, 3);
}

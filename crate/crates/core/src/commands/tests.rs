use super::*;

fn cfg(text: &str) -> VoaConfig {
    parse_config(text).unwrap()
}

#[test]
fn config_parsing() {
    let c = cfg("# Virasoro\nfamily = virasoro\nc=1/2 # Ising\nfield=Q\ntruncate=8\n");
    assert_eq!(c.family_name(), "virasoro");
    assert_eq!(c.truncation(), 8);
    let h = cfg("family=heisenberg\nrank=2\nfield=F7");
    assert_eq!(h.generator_count(), 2);
    assert_eq!(h.truncation(), DEFAULT_TRUNCATION);
    for bad in [
        "family=virasoro\nc=1\nfield=F4",
        "family=virasoro",
        "family=moonshine",
        "family=heisenberg\ncolor=red",
        "family=heisenberg\nfamily=heisenberg",
        "family heisenberg",
        "family=virasoro\nc=1\nfield=F3",
    ] {
        assert_eq!(parse_config(bad).unwrap_err().exit_code(), 2, "{bad}");
    }
}

#[test]
fn describe_reports_weight_dims() {
    let c = cfg("family=virasoro\nc=1/2\ntruncate=8");
    let out = run(Command::Describe, Some(&c), &Options::default()).unwrap();
    assert_eq!(out.status, Status::Ok);
    assert_eq!(out.report["result"]["dims"], json!([1, 0, 1, 1, 2, 2, 4, 4, 7]));
    let h = cfg("family=heisenberg\ntruncate=5");
    let out = run(Command::Describe, Some(&h), &Options::default()).unwrap();
    assert_eq!(out.report["result"]["dims"], json!([1, 1, 2, 3, 5, 7]));
    assert_eq!(out.exit_code(), 0);
}

#[test]
fn zhu_reports_commutativity_for_virasoro() {
    let c = cfg("family=virasoro\nc=1/2\ntruncate=8");
    let out = run(Command::Zhu, Some(&c), &Options::default()).unwrap();
    assert_eq!(out.status, Status::Ok);
    assert_eq!(out.report["result"]["properties"]["commutative"]["passed"], json!(true));
    assert_eq!(out.report["result"]["graded_dims"], json!([1, 0, 1, 0, 1]));
}

#[test]
fn endo_on_fock_space() {
    let c = cfg("family=heisenberg\nfield=F5\ntruncate=4");
    let opts = Options {
        module: Some("fock:1".into()),
        ..Options::default()
    };
    let out = run(Command::Endo, Some(&c), &opts).unwrap();
    assert_eq!(out.report["result"]["commutant"]["dim"], json!(1));
    assert_eq!(out.report["result"]["absolutely_simple"], json!(true));
    let opts = Options {
        module: Some("companion:x^2-2".into()),
        ..Options::default()
    };
    let out = run(Command::Endo, Some(&c), &opts).unwrap();
    assert_eq!(out.report["result"]["commutant"]["dim"], json!(2));
    assert_eq!(out.report["result"]["simple"]["simple"], json!(true));
    assert_eq!(out.report["result"]["absolutely_simple"], json!(false));
}

#[test]
fn extend_exit_codes() {
    let c = cfg("family=heisenberg\nfield=F5\ntruncate=4");
    let with_ext = |e: &str| Options {
        ext: Some(e.into()),
        ..Options::default()
    };
    assert_eq!(run(Command::Extend, Some(&c), &with_ext("x^2-2x+1")).unwrap_err().exit_code(), 3);
    assert_eq!(run(Command::Extend, Some(&c), &with_ext("x^2-1")).unwrap_err().exit_code(), 2);
    assert_eq!(run(Command::Extend, Some(&c), &Options::default()).unwrap_err().exit_code(), 2);
    let q = cfg("family=heisenberg\nfield=Q\ntruncate=4");
    assert_eq!(run(Command::Extend, Some(&q), &with_ext("x^5-2")).unwrap_err().exit_code(), 3);
    let opts = Options {
        module: Some("companion:x^2-2".into()),
        ..with_ext("t^2-2")
    };
    let out = run(Command::Extend, Some(&c), &opts).unwrap();
    assert_eq!(out.status, Status::Ok, "{}", out.render());
    assert_eq!(out.report["result"]["module"]["extended"]["top_blocks"], json!(2));
}

#[test]
fn missing_config_is_a_usage_error() {
    assert_eq!(run(Command::Zhu, None, &Options::default()).unwrap_err().exit_code(), 2);
    assert!("frobnicate".parse::<Command>().is_err());
}

#[test]
fn module_specs() {
    let h = cfg("family=heisenberg\nrank=2\nfield=F7");
    assert!(parse_module(&h, "fock:1,2", 4).is_ok());
    assert!(parse_module(&h, "top:1:3;4", 4).is_ok());
    assert_eq!(parse_module(&h, "top:2:0,1,0,0;0,0,1,0", 4).unwrap_err().exit_code(), 2);
    assert_eq!(parse_module(&h, "verma:1", 4).unwrap_err().exit_code(), 2);
    let a = cfg("family=affine_sl2\nk=1\nfield=F7");
    assert_eq!(parse_module(&a, "weyl:2", 4).unwrap().top_dim(), 2);
}

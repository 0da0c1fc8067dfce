//! End-to-end CLI checks: exit-code contract, formats, and the verify
//! subcommands driven through real certificate files.

use std::path::PathBuf;
use std::process::{Command, Output};

use capbounds::graphs::{chifrac, dr_cover_from_fractional, exists_homomorphism, generate, Family};
use capbounds::inertia::PackingFamily;
use capbounds::mat::Mat;
use capbounds::reps::certfile::{
    format_fitting_gf, format_isotropic, format_packing, format_pair_rep, format_qhom,
    format_subspace_rep,
};
use capbounds::reps::ffrank::{ff_min_rank, FfRankOptions};
use capbounds::reps::{cover_to_rep, subspace_to_pair, QHomCert};
use capbounds::scalar::rat_int;
use capbounds::Rat;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_capbounds"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn capbounds")
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("bad json ({e}): {}", String::from_utf8_lossy(&out.stdout))
    })
}

fn write_temp(dir: &tempfile::TempDir, name: &str, contents: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

#[test]
fn compute_c5_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let el = write_temp(&dir, "c5.el", "5 5\n0 1\n1 2\n2 3\n3 4\n0 4\n");
    let out = run(&["compute", "--graph", el.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let json = stdout_json(&out);
    let theta = json["bounds"]["theta"]["value"].as_f64().unwrap();
    assert!((theta - 2.23607).abs() < 1e-4);
    assert_eq!(json["bounds"]["alpha"], 2);
    assert_eq!(json["meta"]["seed"], 42);
}

#[test]
fn compute_k1_all_ones() {
    let dir = tempfile::tempdir().unwrap();
    let el = write_temp(&dir, "k1.el", "1 0\n");
    let out = run(&["compute", "--graph", el.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 0);
    let json = stdout_json(&out);
    assert_eq!(json["bounds"]["alpha"], 1);
    assert_eq!(json["bounds"]["inertia"], 1);
    assert_eq!(json["bounds"]["chifrac"]["num"], "1");
    assert!((json["bounds"]["theta"]["value"].as_f64().unwrap() - 1.0).abs() < 1e-4);
    assert!((json["bounds"]["capacity_lower"]["value"].as_f64().unwrap() - 1.0).abs() < 1e-9);
}

#[test]
fn compute_petersen_selected_bounds() {
    let out = run(&["compute", "--graph", "petersen", "--bounds", "alpha,inertia"]);
    assert_eq!(exit_code(&out), 0);
    let json = stdout_json(&out);
    assert_eq!(json["bounds"]["alpha"], 4);
    assert_eq!(json["bounds"]["inertia"], 4);
    assert!(json["bounds"].get("theta").is_none());
}

#[test]
fn compute_graph6_input() {
    let dir = tempfile::tempdir().unwrap();
    let g6 = write_temp(&dir, "k5.g6", "D~{\n");
    let out = run(&["compute", "--graph", g6.to_str().unwrap(), "--bounds", "alpha,chifrac"]);
    assert_eq!(exit_code(&out), 0);
    let json = stdout_json(&out);
    assert_eq!(json["bounds"]["alpha"], 1);
    assert_eq!(json["bounds"]["chifrac"]["num"], "1");
}

#[test]
fn parse_error_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let el = write_temp(&dir, "bad.el", "3 1\n0 7\n");
    let out = run(&["compute", "--graph", el.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn unknown_bound_exits_one() {
    let out = run(&["compute", "--graph", "petersen", "--bounds", "wat"]);
    assert_eq!(exit_code(&out), 1);
}

#[test]
fn budget_exhaustion_exits_three_with_partial_report() {
    let out = run(&["compute", "--graph", "petersen", "--alpha-budget", "5"]);
    assert_eq!(exit_code(&out), 3, "{}", String::from_utf8_lossy(&out.stderr));
    let json = stdout_json(&out);
    assert_eq!(json["partial"], true);
    assert!(json["bounds"]["alpha"]["error"]
        .as_str()
        .unwrap()
        .contains("budget"));
}

#[test]
fn table_format_is_flat_text() {
    let out = run(&["compute", "--graph", "cycle:4", "--format", "table", "--bounds", "alpha"]);
    assert_eq!(exit_code(&out), 0);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("bounds.alpha"));
    assert!(serde_json::from_str::<serde_json::Value>(&text).is_err());
}

#[test]
fn verify_subspace_accept_and_reject() {
    let dir = tempfile::tempdir().unwrap();
    let g = generate(&Family::Cycle(5)).unwrap();
    let el = write_temp(&dir, "c5.el", &g.to_edge_list_string());
    let (_, cover) = chifrac(&g, 1000).unwrap();
    let dr = dr_cover_from_fractional(&g, &cover).unwrap();
    let rep = cover_to_rep(&g, &dr).unwrap();
    let cert = write_temp(&dir, "c5.rep", &format_subspace_rep(&rep));
    let out = run(&[
        "verify",
        "subspace-rep",
        "--graph",
        el.to_str().unwrap(),
        "--cert",
        cert.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let json = stdout_json(&out);
    assert_eq!(json["verdict"], "accept");
    assert_eq!(json["value"]["num"], "5");

    // Mutate one basis so a non-neighbor pair shares a subspace.
    let mut bad = rep.clone();
    bad.bases[2] = bad.bases[0].clone();
    let cert = write_temp(&dir, "c5bad.rep", &format_subspace_rep(&bad));
    let out = run(&[
        "verify",
        "subspace-rep",
        "--graph",
        el.to_str().unwrap(),
        "--cert",
        cert.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 4);
    let json = stdout_json(&out);
    assert_eq!(json["verdict"], "reject");
    assert!(json["reason"].as_str().unwrap().contains("vertex"));
}

#[test]
fn verify_pair_rep_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let g = generate(&Family::Cycle(5)).unwrap();
    let el = write_temp(&dir, "c5.el", &g.to_edge_list_string());
    let (_, cover) = chifrac(&g, 1000).unwrap();
    let dr = dr_cover_from_fractional(&g, &cover).unwrap();
    let rep = cover_to_rep(&g, &dr).unwrap();
    let pair = subspace_to_pair(&g, &rep);
    let cert = write_temp(&dir, "c5.pair", &format_pair_rep(&pair, rep.r));
    let out = run(&[
        "verify",
        "pair-rep",
        "--graph",
        el.to_str().unwrap(),
        "--cert",
        cert.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn verify_fitting_gf2() {
    let dir = tempfile::tempdir().unwrap();
    let g = generate(&Family::Cycle(5)).unwrap();
    let el = write_temp(&dir, "c5.el", &g.to_edge_list_string());
    let res = ff_min_rank::<2>(&g, &FfRankOptions::default()).unwrap();
    let cert = write_temp(&dir, "c5.fit", &format_fitting_gf(&res.witness));
    let out = run(&[
        "verify",
        "fitting",
        "--graph",
        el.to_str().unwrap(),
        "--cert",
        cert.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let json = stdout_json(&out);
    assert_eq!(json["rank"], res.rank);
}

#[test]
fn verify_qhom_with_target() {
    let dir = tempfile::tempdir().unwrap();
    let g = generate(&Family::Cycle(5)).unwrap();
    let h = generate(&Family::Cycle(3)).unwrap();
    let gel = write_temp(&dir, "g.el", &g.to_edge_list_string());
    let hel = write_temp(&dir, "h.el", &h.to_edge_list_string());
    let hom = exists_homomorphism(&g, &h).unwrap().unwrap();
    let cert_data = QHomCert::from_hom(&hom, h.n());
    let cert = write_temp(&dir, "gh.qhom", &format_qhom(&cert_data));
    let out = run(&[
        "verify",
        "qhom",
        "--graph",
        gel.to_str().unwrap(),
        "--cert",
        cert.to_str().unwrap(),
        "--target",
        hel.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));

    // Missing --target is a usage error, exit 1.
    let out = run(&[
        "verify",
        "qhom",
        "--graph",
        gel.to_str().unwrap(),
        "--cert",
        cert.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 1);
}

#[test]
fn verify_packing_and_isotropic() {
    let dir = tempfile::tempdir().unwrap();
    let g = generate(&Family::Cycle(5)).unwrap();
    let el = write_temp(&dir, "c5.el", &g.to_edge_list_string());
    // Independent set {0, 2} as d = 1 indicators.
    let one = Mat::from_fn(1, 1, |_, _| rat_int(1));
    let zero = Mat::from_fn(1, 1, |_, _| rat_int(0));
    let fam = PackingFamily {
        d: 1,
        projections: vec![one.clone(), zero.clone(), one, zero.clone(), zero],
    };
    let cert = write_temp(&dir, "c5.pack", &format_packing(&fam));
    let out = run(&[
        "verify",
        "packing",
        "--graph",
        el.to_str().unwrap(),
        "--cert",
        cert.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let json = stdout_json(&out);
    assert_eq!(json["lambda"]["num"], "2");
    assert_eq!(json["inertia"], 2);

    let basis = Mat::from_fn(5, 2, |i, j| {
        if (j == 0 && i == 0) || (j == 1 && i == 2) {
            Rat::from_integer(1.into())
        } else {
            Rat::from_integer(0.into())
        }
    });
    let cert = write_temp(&dir, "c5.iso", &format_isotropic(&basis));
    let out = run(&[
        "verify",
        "isotropic",
        "--graph",
        el.to_str().unwrap(),
        "--cert",
        cert.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let json = stdout_json(&out);
    assert_eq!(json["dimension"], 2);
}

#[test]
fn verify_kind_mismatch_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let g = generate(&Family::Empty(2)).unwrap();
    let el = write_temp(&dir, "e2.el", &g.to_edge_list_string());
    let cert = write_temp(
        &dir,
        "e2.rep",
        "subspace-rep rational 2 1\nvertex 0\n2 1\n1\n0\nvertex 1\n2 1\n0\n1\n",
    );
    let out = run(&[
        "verify",
        "fitting",
        "--graph",
        el.to_str().unwrap(),
        "--cert",
        cert.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 1);
}

#[test]
fn suite_commands_and_dump() {
    let dir = tempfile::tempdir().unwrap();
    let dump = dir.path().join("dumps");
    let out = run(&[
        "suite",
        "sandwich",
        "--samples",
        "6",
        "--n",
        "3..6",
        "--weightings",
        "4",
        "--seed",
        "5",
        "--dump",
        dump.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let json = stdout_json(&out);
    assert_eq!(json["name"], "sandwich");
    assert_eq!(json["seed"], 5);
    // Zero failures means nothing dumped but the directory exists.
    assert!(dump.exists());
    assert_eq!(std::fs::read_dir(&dump).unwrap().count(), 0);

    let out = run(&["suite", "nope"]);
    assert_eq!(exit_code(&out), 1);
}

#[test]
fn power_respects_budget_exit() {
    let out = run(&["power", "--graph", "cycle:5", "--k", "3", "--alpha-budget", "30"]);
    assert_eq!(exit_code(&out), 3);
    let json = stdout_json(&out);
    assert_eq!(json["complete"], false);
}

#[test]
fn inertia_subcommand() {
    let out = run(&["inertia", "--graph", "petersen"]);
    assert_eq!(exit_code(&out), 0);
    let json = stdout_json(&out);
    assert_eq!(json["inertia"], 4);
    assert_eq!(json["signature"]["pos"], 6);

    let out = run(&["inertia", "--graph", "cycle:5", "--optimize", "--iters", "40", "--seed", "7"]);
    assert_eq!(exit_code(&out), 0);
    let json = stdout_json(&out);
    assert_eq!(json["inertia"], 2);
    assert_eq!(json["optimized"], true);
}

#[test]
fn compute_with_user_haemers_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let g = generate(&Family::Complete(4)).unwrap();
    let el = write_temp(&dir, "k4.el", &g.to_edge_list_string());
    let res = ff_min_rank::<2>(&g, &FfRankOptions::default()).unwrap();
    let cert = write_temp(&dir, "k4.fit", &format_fitting_gf(&res.witness));
    let out = run(&[
        "compute",
        "--graph",
        el.to_str().unwrap(),
        "--bounds",
        "alpha,haemers,chifrac",
        "--haemers-cert",
        cert.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let json = stdout_json(&out);
    assert_eq!(json["bounds"]["haemers_upper"]["num"], "1");
    assert_eq!(json["bounds"]["haemers_upper"]["certificates_accepted"], 1);
}

#[test]
fn budget_ms_caps_clique_enumeration() {
    // The complement of five disjoint triangles is complete 5-partite with
    // 3^5 = 243 maximal cliques; a tiny work budget caps enumeration at
    // 100 and the report degrades to partial (exit 3).
    let dir = tempfile::tempdir().unwrap();
    let tri = generate(&Family::Cycle(3)).unwrap();
    let mut g = tri.clone();
    for _ in 0..4 {
        g = g.disjoint_union(&tri);
    }
    let g = g.complement();
    let el = write_temp(&dir, "multi.el", &g.to_edge_list_string());
    let out = run(&[
        "compute",
        "--graph",
        el.to_str().unwrap(),
        "--bounds",
        "alpha,chifrac",
        "--budget-ms",
        "1",
    ]);
    assert_eq!(exit_code(&out), 3, "{}", String::from_utf8_lossy(&out.stderr));
    let json = stdout_json(&out);
    assert_eq!(json["bounds"]["alpha"], 3);
    assert!(json["bounds"]["chifrac"]["error"]
        .as_str()
        .unwrap()
        .contains("maximal_cliques"));
}

use std::fs;
use std::process::{Command, Output};

const DRUDE: &str = "drude:9.03eV,0.0345eV";

fn casimir(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_casimir"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = casimir(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

/// Data rows as (column names, values).
fn table(text: &str) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut lines = text.lines().filter(|l| !l.starts_with('#'));
    let names = lines.next().unwrap().split(',').map(str::to_owned).collect();
    let rows = lines
        .map(|l| l.split(',').map(|c| c.parse().unwrap()).collect())
        .collect();
    (names, rows)
}

fn column(text: &str, name: &str) -> Vec<f64> {
    let (names, rows) = table(text);
    let i = names.iter().position(|n| n == name).unwrap_or_else(|| panic!("no column {name}"));
    rows.iter().map(|r| r[i]).collect()
}

fn header(text: &str, key: &str) -> String {
    let prefix = format!("# {key}=");
    text.lines()
        .find_map(|l| l.strip_prefix(&prefix))
        .unwrap_or_else(|| panic!("no header {key}"))
        .to_owned()
}

#[test]
fn ideal_plates_reproduce_casimir() {
    let out = ok(&["pressure", "--model", "ideal", "--a", "1um", "--T", "0"]);
    let r = column(&out, "P_over_PC")[0];
    assert!((r - 1.0).abs() < 1e-5, "{r}");
    assert_eq!(
        table(&out).0.join(","),
        "a_m,T_K,P_Pa,P_over_PC,P_TE_Pa,P_TM_Pa,est_error_Pa"
    );
}

#[test]
fn drude_room_temperature_band() {
    let out = ok(&["pressure", "--model", DRUDE, "--a", "1um", "--T", "300K"]);
    let r = column(&out, "P_over_PC")[0];
    assert!((r - 0.85).abs() <= 0.17, "{r}");
}

#[test]
fn plasma_drude_ratio_at_large_separation() {
    let p = |m: &str| column(&ok(&["pressure", "--model", m, "--a", "10um", "--T", "300K"]), "P_Pa")[0];
    let ratio = p("plasma:9.03eV") / p(DRUDE);
    assert!((ratio / 2.0 - 1.0).abs() < 0.05, "{ratio}");
}

#[test]
fn equivalent_units_resolve_identically() {
    let a: Vec<String> = ["1um", "1000nm", "1e-6m"]
        .iter()
        .map(|a| header(&ok(&["pressure", "--model", "ideal", "--a", a, "--T", "0"]), "a_m"))
        .collect();
    assert!(a.iter().all(|x| x == &a[0]), "{a:?}");
}

#[test]
fn manifest_lists_the_resolved_run() {
    let out = ok(&["pressure", "--model", DRUDE, "--a", "1um", "--T", "300K", "--rel-tol", "1e-6"]);
    for key in ["tool", "command", "model_left", "model_right", "policy", "rel_tol", "y_max", "constants", "timestamp"] {
        header(&out, key);
    }
    assert_eq!(header(&out, "policy"), "from-model");
    assert_eq!(header(&out, "rel_tol"), "1.00000000e-6");
    assert!(header(&out, "model_left").starts_with("drude(omega_p=1.37189"));
}

#[test]
fn deterministic_runs_are_byte_identical_and_replayable() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("first.csv");
    let replay = dir.path().join("replay.csv");
    let args = ["sweep", "--var", "a", "--from", "1um", "--to", "2um", "--points", "3", "--model", DRUDE, "--T", "300K", "--deterministic"];
    let stdout = ok(&args);
    assert!(!stdout.contains("# timestamp="));
    assert_eq!(stdout, ok(&args));
    let mut with_file = args.to_vec();
    with_file.extend(["-o", first.to_str().unwrap()]);
    ok(&with_file);
    assert_eq!(fs::read_to_string(&first).unwrap(), stdout);
    ok(&["rerun", first.to_str().unwrap(), "-o", replay.to_str().unwrap()]);
    assert_eq!(fs::read(&first).unwrap(), fs::read(&replay).unwrap());
}

#[test]
fn usage_errors_exit_with_2() {
    for args in [
        vec!["pressure", "--model", "gold", "--a", "1um", "--T", "0"],
        vec!["pressure", "--model", "ideal", "--a", "1parsec", "--T", "0"],
        vec!["pressure", "--model", "ideal", "--a", "-1um", "--T", "0"],
        vec!["pressure", "--model", DRUDE, "--a", "1um", "--T", "0", "--policy", "exclude-te"],
        vec!["sweep", "--var", "a", "--from", "2um", "--to", "1um", "--model", "ideal", "--T", "0"],
        vec!["sweep", "--var", "a", "--from", "1um", "--to", "2um", "--points", "1", "--model", "ideal", "--T", "0"],
        vec!["slab", "--model", "ideal"],
        vec!["slab", "--model", "ideal", "--delta", "2um"],
        vec!["frobnicate"],
    ] {
        let out = casimir(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn convergence_failures_exit_with_3() {
    let out = casimir(&[
        "pressure", "--model", DRUDE, "--a", "1um", "--T", "0", "--rel-tol", "1e-11", "--max-subdivisions", "1",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(msg.contains("did not converge") || msg.contains("not converged"), "{msg}");
}

#[test]
fn policy_switches_with_ideal_plates() {
    let p = |policy: &str| {
        column(&ok(&["pressure", "--model", "ideal", "--a", "1um", "--T", "300K", "--policy", policy]), "P_TE_Pa")[0]
    };
    // Dropping the TE zero mode weakens the TE attraction.
    assert!(p("exclude-te") > p("force-ideal-both"));
}

#[test]
fn ideal_gap_sweep_is_flat() {
    let out = ok(&["sweep", "--var", "a", "--from", "0.5um", "--to", "5um", "--points", "6", "--log", "--model", "ideal", "--T", "0"]);
    let r = column(&out, "P_over_PC");
    assert_eq!(r.len(), 6);
    assert!(r.iter().all(|x| (x - 1.0).abs() < 1e-5), "{r:?}");
}

#[test]
fn drude_gap_sweep_slope() {
    let out = ok(&["sweep", "--var", "a", "--from", "1um", "--to", "2um", "--points", "11", "--model", DRUDE, "--T", "300K"]);
    let a: Vec<f64> = column(&out, "a_m").iter().map(|x| x * 1e6).collect();
    let r = column(&out, "P_over_PC");
    let n = a.len() as f64;
    let (ma, mr) = (a.iter().sum::<f64>() / n, r.iter().sum::<f64>() / n);
    let slope = a.iter().zip(&r).map(|(x, y)| (x - ma) * (y - mr)).sum::<f64>()
        / a.iter().map(|x| (x - ma).powi(2)).sum::<f64>();
    assert!((slope / -0.1 - 1.0).abs() <= 0.3, "{slope}");
}

#[test]
fn drude_temperature_sweep_is_monotone() {
    let out = ok(&["sweep", "--var", "T", "--from", "1K", "--to", "300K", "--points", "12", "--log", "--model", DRUDE, "--a", "1um"]);
    let p = column(&out, "P_Pa");
    // Monotone in T; at 1 µm the thermal Drude correction weakens the attraction.
    assert!(p.windows(2).all(|w| w[1].abs() < w[0].abs()), "{p:?}");
}

#[test]
fn vacuum_integrand_vanishes() {
    let out = ok(&["integrand", "--model", "vacuum", "--a", "1um", "--zeta-points", "5", "--k-points", "5"]);
    let (_, rows) = table(&out);
    assert_eq!(rows.len(), 25);
    assert!(rows.iter().all(|r| r[2] == 0.0 && r[3] == 0.0 && r[4] == 0.0));
}

#[test]
fn drude_integrand_te_vanishes_at_low_frequency() {
    let out = ok(&["integrand", "--model", DRUDE, "--a", "1um", "--zeta-points", "3", "--k-points", "50"]);
    let zeta = column(&out, "zeta_rad_per_s");
    let (te, tm) = (column(&out, "I_TE"), column(&out, "I_TM"));
    let z0 = zeta[0];
    for i in (0..zeta.len()).filter(|&i| zeta[i] == z0) {
        assert!(te[i].abs() < 1e-3 * tm[i].abs(), "row {i}: {} vs {}", te[i], tm[i]);
    }
}

#[test]
fn integrand_dump_integrates_to_the_pressure() {
    let dump = ok(&["integrand", "--model", DRUDE, "--a", "1um"]);
    let (zeta, k, total) = (column(&dump, "zeta_rad_per_s"), column(&dump, "kperp_per_m"), column(&dump, "I_total"));
    let nk = 200;
    assert_eq!(total.len(), 200 * nk);
    let trap = |x: &[f64], y: &[f64]| x.windows(2).zip(y.windows(2)).map(|(x, y)| 0.5 * (x[1] - x[0]) * (y[0] + y[1])).sum::<f64>();
    let ks = &k[..nk];
    let inner: Vec<f64> = total.chunks(nk).map(|row| trap(ks, row)).collect();
    let zs: Vec<f64> = zeta.iter().step_by(nk).copied().collect();
    let integral = trap(&zs, &inner);
    let p = column(&ok(&["pressure", "--model", DRUDE, "--a", "1um", "--T", "0"]), "P_Pa")[0];
    assert!((integral / p - 1.0).abs() < 0.01, "{integral} vs {p}");
}

#[test]
fn slab_center_is_force_free() {
    let out = ok(&["slab", "--model", DRUDE, "--delta", "0"]);
    assert_eq!(column(&out, "P_Pa"), vec![0.0]);
    assert_eq!(table(&out).0.join(","), "delta_m,P_Pa,P_over_PCref,est_error_Pa");
}

#[test]
fn slab_sweep_increases() {
    let out = ok(&["slab", "--model", "ideal", "--delta-sweep", "--points", "11"]);
    let d = column(&out, "delta_m");
    assert!((d[10] - 1.2e-6).abs() < 1e-15);
    let p = column(&out, "P_Pa");
    assert!(p.windows(2).all(|w| w[1] > w[0]), "{p:?}");
}

#[test]
fn slab_offset_is_antisymmetric() {
    let p = |d: &str| column(&ok(&["slab", "--model", DRUDE, "--T", "300K", "--delta", d]), "P_Pa")[0];
    assert_eq!(p("-400nm"), -p("400nm"));
}

#[test]
fn slab_delta_sweep_via_sweep_command() {
    let out = ok(&["sweep", "--var", "delta", "--from", "-1um", "--to", "1um", "--points", "5", "--model", "ideal", "--cavity", "3um", "--slab", "500nm"]);
    let p = column(&out, "P_Pa");
    assert_eq!(p[2], 0.0);
    assert_eq!(p[0], -p[4]);
}

#[test]
fn ideal_thermo_matches_low_temperature_entropy() {
    use casimir_core::constants::{HBAR, C, K_B, ZETA3};
    use std::f64::consts::PI;
    let (a, t) = (1e-6, 0.01 * HBAR * C / (K_B * 1e-6));
    let out = ok(&["thermo", "--model", "ideal", "--policy", "force-ideal-both", "--a", "1um", "--T", &format!("{t}K")]);
    let s = column(&out, "S_J_per_m2K")[0];
    let expected = 3.0 * ZETA3 * K_B.powi(3) * t * t / (2.0 * PI * HBAR * HBAR * C * C)
        - 4.0 * PI * PI * K_B.powi(4) * t.powi(3) * a / (45.0 * HBAR.powi(3) * C.powi(3));
    assert!((s / expected - 1.0).abs() < 0.01, "{s} vs {expected}");
}

#[test]
fn drude_thermo_rows() {
    let out = ok(&["thermo", "--model", DRUDE, "--a", "1um", "--T", "1K,30K,100K,300K"]);
    let s = column(&out, "S_J_per_m2K");
    assert!(s.iter().cloned().fold(f64::INFINITY, f64::min) < 0.0);
    let (pc, p) = (column(&out, "P_check_Pa"), column(&out, "P_Pa"));
    let (pce, pe) = (column(&out, "P_check_err"), column(&out, "P_err"));
    for i in 0..p.len() {
        let tol = (1e-3 * p[i].abs()).max(pce[i] + pe[i]);
        assert!((pc[i] - p[i]).abs() < tol, "row {i}");
    }
}

#[test]
fn tables_are_found_through_the_search_path() {
    let dir = tempfile::tempdir().unwrap();
    let mut text = String::from("# source: synthetic Drude samples\n");
    let (wp, g) = (1.371_898e16_f64, 5.24e13_f64);
    for i in 0..12 {
        let z = 1e13 * 10f64.powf(i as f64 * 4.0 / 11.0);
        text.push_str(&format!("{z:e},{:e}\n", 1.0 + wp * wp / (z * (z + g))));
    }
    fs::write(dir.path().join("synthetic.csv"), text).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_casimir"))
        .env("CASIMIR_TABLE_DIR", dir.path())
        .args(["pressure", "--model", "table:synthetic.csv,drude-tail:9.03eV,0.0345eV", "--a", "1um", "--T", "300K"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(header(&text, "model_left").contains("synthetic Drude samples"));
    let tab = column(&text, "P_Pa")[0];
    let analytic = column(&ok(&["pressure", "--model", DRUDE, "--a", "1um", "--T", "300K"]), "P_Pa")[0];
    assert!((tab / analytic - 1.0).abs() < 1e-2, "{tab} vs {analytic}");

    let missing = casimir(&["pressure", "--model", "table:absent.csv,drude-tail:9eV,0.03eV", "--a", "1um", "--T", "0"]);
    assert_eq!(missing.status.code(), Some(2));
}

use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};
use std::path::PathBuf;
use std::process::{Command, Output};

use polydist::{disk_cdf, nth_neighbor_pdf, NeighborModel, PiecewiseOverlap, Point, PolygonSpec};

fn polydist(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polydist"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn csv(text: &str) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut lines = text.lines();
    let header = lines
        .next()
        .unwrap()
        .split(',')
        .map(str::to_string)
        .collect();
    let rows = lines
        .map(|l| l.split(',').map(|c| c.parse().unwrap()).collect())
        .collect();
    (header, rows)
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("polydist-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn pdf_for_all_ranks() {
    let out = polydist(&[
        "pdf",
        "--sides",
        "4",
        "--circumradius",
        "1",
        "--point",
        "0.5,-0.5",
        "--nodes",
        "5",
        "--neighbor",
        "all",
    ]);
    assert!(out.status.success());
    let (header, rows) = csv(&stdout(&out));
    assert_eq!(header, ["r", "f1", "f2", "f3", "f4", "f5"]);
    assert_eq!(rows.len(), 101);
    assert!((rows[100][0] - 10f64.sqrt() / 2.0).abs() < 1e-15);

    let sq = PolygonSpec::new(4, 1.0).unwrap();
    let pw = PiecewiseOverlap::build(&sq, Point::new(0.5, -0.5)).unwrap();
    for row in &rows {
        for n in 1..=5 {
            let want = nth_neighbor_pdf(&pw, NeighborModel::new(5, n).unwrap(), row[0]);
            assert_eq!(row[n], want, "17 significant digits round-trip");
        }
    }
}

#[test]
fn midside_keyword_matches_explicit_point() {
    let a = polydist(&[
        "cdf",
        "--sides",
        "4",
        "--circumradius",
        "1",
        "--point",
        "midside",
    ]);
    let b = polydist(&[
        "cdf",
        "--sides",
        "4",
        "--circumradius",
        "1",
        "--point",
        "0.5,-0.5",
    ]);
    let (_, ra) = csv(&stdout(&a));
    let (_, rb) = csv(&stdout(&b));
    for (x, y) in ra.iter().zip(&rb) {
        assert!((x[1] - y[1]).abs() < 1e-15);
    }
}

#[test]
fn breakpoints_document() {
    let out = polydist(&[
        "breakpoints",
        "--sides",
        "4",
        "--circumradius",
        "1",
        "--point",
        "0.5,-0.5",
    ]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let bp: Vec<f64> = doc["structure"]["breakpoints"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_f64().unwrap())
        .collect();
    let want = [FRAC_1_SQRT_2, SQRT_2, 10f64.sqrt() / 2.0];
    assert_eq!(bp.len(), 3);
    for (b, w) in bp.iter().zip(want) {
        assert!((b - w).abs() < 1e-12);
    }
    // S_3 is as close as S_1 here, so it sorts before S_2.
    let k: Vec<u64> = doc["structure"]["index_vector"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_u64().unwrap())
        .collect();
    assert_eq!(k, [4, 1, 3, 5, 8, 2, 6, 7]);
    assert_eq!(
        doc["structure"]["ranges"][1]["expression"],
        "pi r^2 - B4 - B1 - B3 + C1 + C4"
    );

    let out = polydist(&[
        "breakpoints",
        "--sides",
        "4",
        "--circumradius",
        "1",
        "--point",
        "0.5,-0.5",
        "--format",
        "csv",
    ]);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("position,k,term,distance,range"));
    assert_eq!(
        lines.next().unwrap().split(',').take(3).collect::<Vec<_>>(),
        ["1", "4", "B4"]
    );
    assert_eq!(text.lines().count(), 9);
}

#[test]
fn verify_passes_on_hexagon() {
    let out = polydist(&[
        "verify",
        "--sides",
        "6",
        "--circumradius",
        "1",
        "--point",
        "0.2,0.3",
        "--samples",
        "100000",
        "--seed",
        "7",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["pass"], true);
    let checks = doc["checks"].as_array().unwrap();
    let cdf = checks
        .iter()
        .find(|c| c["name"] == "cdf_vs_empirical")
        .unwrap();
    assert!(cdf["max_deviation"].as_f64().unwrap() <= 0.01);
    for c in checks {
        assert!(c["max_deviation"].as_f64().unwrap() <= c["tolerance"].as_f64().unwrap());
    }
    assert_eq!(doc["config"]["seed"], 7);
}

#[test]
fn verify_reports_failure_with_status_one() {
    let out = polydist(&[
        "verify",
        "--sides",
        "5",
        "--circumradius",
        "1",
        "--point",
        "center",
        "--samples",
        "10",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["pass"], false);
}

#[test]
fn outputs_are_reproducible() {
    let args = [
        "simulate", "--sides", "5", "--area", "3", "--point", "vertex", "--nodes", "4", "--runs",
        "3000", "--seed", "11",
    ];
    let a = polydist(&args);
    let b = polydist(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let (header, rows) = csv(&stdout(&a));
    assert_eq!(header.len(), 1 + 2 * 4);
    assert_eq!(rows.len(), 50);
    let width = rows[1][0] - rows[0][0];
    for col in 1..header.len() {
        let mass: f64 = rows.iter().map(|r| r[col]).sum::<f64>() * width;
        assert!((mass - 1.0).abs() < 1e-9, "{}", header[col]);
    }
}

#[test]
fn simulate_empirical_cdf() {
    let out = polydist(&[
        "simulate",
        "--sides",
        "4",
        "--circumradius",
        "1",
        "--point",
        "0.5,-0.5",
        "--seed",
        "3",
    ]);
    let (header, rows) = csv(&stdout(&out));
    assert_eq!(header, ["r", "empirical", "exact"]);
    for r in &rows {
        assert!((r[1] - r[2]).abs() <= 0.01);
    }
}

#[test]
fn disk_route() {
    let out = polydist(&[
        "cdf",
        "--sides",
        "disk",
        "--circumradius",
        "2",
        "--point",
        "0.5,0.5",
        "--steps",
        "10",
    ]);
    assert!(out.status.success());
    let (_, rows) = csv(&stdout(&out));
    for r in &rows {
        assert_eq!(r[1], disk_cdf(2.0, Point::new(0.5, 0.5), r[0]).unwrap());
    }
    let vertex = polydist(&[
        "pdf",
        "--sides",
        "disk",
        "--area",
        "100",
        "--point",
        "vertex",
        "--nodes",
        "10",
        "--neighbor",
        "10",
    ]);
    let (header, rows) = csv(&stdout(&vertex));
    assert_eq!(header, ["r", "f10"]);
    let radius = (100.0 / std::f64::consts::PI).sqrt();
    assert!((rows.last().unwrap()[0] - 2.0 * radius).abs() < 1e-12);
}

#[test]
fn area_flag_inverts_to_radius() {
    let out = polydist(&[
        "cdf", "--sides", "4", "--area", "100", "--point", "center", "--format", "json",
    ]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let rows = doc["rows"].as_array().unwrap();
    let last = rows.last().unwrap();
    assert!((last[0].as_f64().unwrap() - 50f64.sqrt()).abs() < 1e-12);
    assert_eq!(last[1], 1.0);
    assert_eq!(doc["columns"][1], "cdf");
}

#[test]
fn usage_errors_exit_two_without_output() {
    let cases: [&[&str]; 7] = [
        &[
            "cdf",
            "--sides",
            "4",
            "--circumradius",
            "1",
            "--area",
            "2",
            "--point",
            "center",
        ],
        &[
            "cdf",
            "--sides",
            "square",
            "--circumradius",
            "1",
            "--point",
            "center",
        ],
        &[
            "cdf",
            "--sides",
            "2",
            "--circumradius",
            "1",
            "--point",
            "center",
        ],
        &[
            "pdf",
            "--sides",
            "4",
            "--circumradius",
            "1",
            "--point",
            "center",
        ],
        &[
            "cdf",
            "--sides",
            "disk",
            "--circumradius",
            "1",
            "--point",
            "midside",
        ],
        &[
            "pdf",
            "--sides",
            "4",
            "--circumradius",
            "1",
            "--point",
            "center",
            "--nodes",
            "3",
            "--neighbor",
            "4",
        ],
        &["cdf", "--circumradius", "1", "--point", "center", "--bogus"],
    ];
    for args in cases {
        let out = polydist(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn outside_point_is_a_domain_error() {
    let out = polydist(&[
        "cdf",
        "--sides",
        "4",
        "--circumradius",
        "1",
        "--point",
        "0.8,0.8",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(out.stdout.is_empty());
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("half-plane of side S_1"), "{err}");

    let out = polydist(&[
        "cdf",
        "--sides",
        "disk",
        "--circumradius",
        "1",
        "--point",
        "1,1",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn config_file_with_flag_overrides() {
    let path = scratch("square.conf");
    std::fs::write(
        &path,
        "# square, midside\nsides = 4\ncircumradius = 1\npoint = midside\nnodes = 5\nneighbor = 2\nsteps = 10\n",
    )
    .unwrap();
    let cfg = path.to_str().unwrap();
    let out = polydist(&["pdf", "--config", cfg]);
    assert!(out.status.success());
    let (header, rows) = csv(&stdout(&out));
    assert_eq!(header, ["r", "f2"]);
    assert_eq!(rows.len(), 11);

    let out = polydist(&["pdf", "--config", cfg, "--neighbor", "all", "--steps", "4"]);
    let (header, rows) = csv(&stdout(&out));
    assert_eq!(header.len(), 6);
    assert_eq!(rows.len(), 5);

    // An area on the command line replaces the file's circumradius.
    let out = polydist(&["cdf", "--config", cfg, "--area", "8", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["config"]["area"], 8.0);
    assert!(doc["config"]["circumradius"].is_null());

    std::fs::write(&path, "sides = 4\nshape = round\n").unwrap();
    assert_eq!(polydist(&["cdf", "--config", cfg]).status.code(), Some(2));
}

#[test]
fn output_flag_writes_file() {
    let path = scratch("cdf.csv");
    let out = polydist(&[
        "cdf",
        "--sides",
        "3",
        "--circumradius",
        "1",
        "--point",
        "center",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("r,cdf\n"));
}

#[test]
fn custom_grid() {
    let out = polydist(&[
        "cdf",
        "--sides",
        "6",
        "--circumradius",
        "1",
        "--point",
        "center",
        "--r-min",
        "0.5",
        "--r-max",
        "0.9",
        "--steps",
        "4",
    ]);
    let (_, rows) = csv(&stdout(&out));
    let r: Vec<f64> = rows.iter().map(|row| row[0]).collect();
    let want: Vec<f64> = (0..=4).map(|i| 0.5 + 0.4 * i as f64 / 4.0).collect();
    assert_eq!(r, want);
}

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use transforms_cli::experiments::plot_spec;
use transforms_cli::plot::render_svg;
use transforms_cli::ExperimentKind;

fn transforms(args: &[&str], cache: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_transforms"))
        .args(args)
        .env("TRANSFORMS_CACHE_DIR", cache)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

/// `(value, error_budget)` from the `eval.csv` in `dir`.
fn eval_csv(dir: &Path) -> ([f64; 2], f64) {
    let text = fs::read_to_string(dir.join("eval.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "function,method,transform,re,im,side,value_re,value_im,error_budget"
    );
    let cols: Vec<&str> = lines.next().unwrap().split(',').collect();
    let num = |i: usize| cols[i].parse::<f64>().unwrap();
    ([num(6), num(7)], num(8))
}

#[test]
fn eval_exponential_at_minus_one() {
    let out = tempfile::tempdir().unwrap();
    let o = transforms(
        &[
            "eval",
            "--f",
            "exp",
            "--re",
            "-1",
            "--out",
            out.path().to_str().unwrap(),
        ],
        out.path(),
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let ([re, im], err) = eval_csv(out.path());
    assert!(re.abs() < 1e-15);
    assert!((im + 0.094_911_630_513_549_85).abs() < 1e-10);
    assert!(err < 1e-10);
    assert!(stdout(&o).contains("eval.csv"));
}

#[test]
fn rational_one_over_one_is_the_oracle() {
    let out = tempfile::tempdir().unwrap();
    let dir = out.path().to_str().unwrap();
    let common = ["--f", "exp-over", "--re", "-0.5", "--im", "0.75", "--out", dir];
    let o = transforms(&[&["eval", "--method", "oracle"][..], &common].concat(), out.path());
    assert!(o.status.success(), "{}", stderr(&o));
    let oracle = eval_csv(out.path()).0;
    let o = transforms(
        &[
            &["eval", "--method", "rational-map", "--p", "1", "--q", "1"][..],
            &common,
        ]
        .concat(),
        out.path(),
    );
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(eval_csv(out.path()).0, oracle);
}

#[test]
fn points_on_the_cut_need_a_side() {
    let out = tempfile::tempdir().unwrap();
    let dir = out.path().to_str().unwrap();
    let o = transforms(&["eval", "--f", "exp", "--re", "0.5", "--out", dir], out.path());
    assert!(!o.status.success());
    let msg = stderr(&o);
    assert!(msg.contains("--side +") && msg.contains("--side -"), "{msg}");

    let mut sides = Vec::new();
    for side in ["+", "-"] {
        let o = transforms(
            &["eval", "--f", "exp", "--re", "0.5", "--side", side, "--out", dir],
            out.path(),
        );
        assert!(o.status.success(), "{}", stderr(&o));
        sides.push(eval_csv(out.path()).0);
    }
    // C⁺ - C⁻ = f(0.5)
    assert!((sides[0][0] - sides[1][0] - (-0.5f64).exp()).abs() < 1e-12);
    assert!((sides[0][1] - sides[1][1]).abs() < 1e-12);
}

#[test]
fn unknown_function_is_reported() {
    let out = tempfile::tempdir().unwrap();
    let o = transforms(
        &[
            "eval",
            "--f",
            "nope",
            "--re",
            "-1",
            "--out",
            out.path().to_str().unwrap(),
        ],
        out.path(),
    );
    assert!(!o.status.success());
    assert!(stderr(&o).contains("nope"));
}

#[test]
fn degenerate_grid_writes_one_row_and_a_plot() {
    let out = tempfile::tempdir().unwrap();
    let cfg = out.path().join("one.cfg");
    fs::write(&cfg, "experiment = changingr\np_list = 1\nn_list = 4\nplot = true\n").unwrap();
    let o = transforms(
        &[
            "changingr",
            "--config",
            cfg.to_str().unwrap(),
            "--out",
            out.path().to_str().unwrap(),
        ],
        out.path(),
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let csv = fs::read_to_string(out.path().join("changingr.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0], "p,n,abs_error");
    assert!(lines[1].starts_with("1,4,"));
    assert!(fs::read_to_string(out.path().join("changingr.svg"))
        .unwrap()
        .starts_with("<svg"));
}

#[test]
fn config_errors_name_the_problem() {
    let out = tempfile::tempdir().unwrap();
    let cfg = out.path().join("bad.cfg");
    fs::write(&cfg, "experiment = changingr\nn_lisst = 4\n").unwrap();
    let o = transforms(&["changingr", "--config", cfg.to_str().unwrap()], out.path());
    assert!(!o.status.success());
    assert!(stderr(&o).contains("n_lisst"));
    fs::write(&cfg, "experiment = optimalr\n").unwrap();
    let o = transforms(&["changingr", "--config", cfg.to_str().unwrap()], out.path());
    assert!(!o.status.success());
}

#[test]
fn headers_and_plots_regenerate_from_csv() {
    let cases: [(&str, &str, &str); 3] = [
        ("optimalr", "p_list = 5, 10\nn_rules = 200\n", "rule,p,n,abs_error"),
        ("integer-decay", "p_list = 5\nn_list = 16\n", "function,p,n,abs_error"),
        ("irrational", "M_list = 0\nr_list = e\n", "r,M,abs_error"),
    ];
    for (name, body, header) in cases {
        let out = tempfile::tempdir().unwrap();
        let cfg = out.path().join("run.cfg");
        fs::write(&cfg, format!("experiment = {name}\n{body}")).unwrap();
        let dir = out.path().join("res");
        let o = transforms(
            &[
                name,
                "--config",
                cfg.to_str().unwrap(),
                "--out",
                dir.to_str().unwrap(),
                "--plot",
                "--sequential",
            ],
            out.path(),
        );
        assert!(o.status.success(), "{name}: {}", stderr(&o));
        let kind: ExperimentKind = name.parse().unwrap();
        let csv = fs::read_to_string(dir.join(format!("{}.csv", kind.name()))).unwrap();
        assert_eq!(csv.lines().next().unwrap(), header);
        for line in csv.lines().skip(1) {
            let err = line.rsplit(',').next().unwrap();
            // six significant digits in scientific notation
            let mantissa = err.split('e').next().unwrap();
            assert_eq!(mantissa.trim_start_matches('-').len(), 7, "{err}");
        }
        let svg = fs::read_to_string(dir.join(format!("{}.svg", kind.name()))).unwrap();
        assert_eq!(render_svg(&csv, &plot_spec(kind)).unwrap(), svg);
    }
}

#[test]
fn cached_reruns_are_byte_identical() {
    let out = tempfile::tempdir().unwrap();
    let cfg = out.path().join("run.cfg");
    fs::write(
        &cfg,
        "experiment = oscillatory\nomega_list = 100\nm_list = 2\nx_list = 2\n",
    )
    .unwrap();
    let mut texts = Vec::new();
    for (i, seq) in [false, true].iter().enumerate() {
        let dir = out.path().join(format!("run{i}"));
        let mut args = vec![
            "oscillatory",
            "--config",
            cfg.to_str().unwrap(),
            "--out",
            dir.to_str().unwrap(),
        ];
        if *seq {
            args.push("--sequential");
        }
        let o = transforms(&args, out.path());
        assert!(o.status.success(), "{}", stderr(&o));
        texts.push(fs::read(dir.join("oscillatory.csv")).unwrap());
    }
    assert_eq!(texts[0], texts[1]);
    assert!(
        fs::read_dir(out.path()).unwrap().count() > 3,
        "cache files were written"
    );
}

//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::sync::Arc;
use std::time::{Duration, Instant};

use common::*;
use connmat::connection::connection_matrices_for;
use connmat::frontend::{matrix_from_json, parse_expr, parse_weyl, print_rational, print_weyl, Report};
use connmat::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = std::result::Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn example(weights: &[i64]) -> (Arc<WeylContext>, WeylIdeal) {
    let ctx = WeylContext::with_int_weights(&["x", "y"], &[], weights).unwrap();
    let ideal = WeylIdeal::parse(&ctx, &["x*dx^2 - y*dy^2 + dx - dy", "x*dx + y*dy + 1"]).unwrap();
    (ctx, ideal)
}

fn within(start: Instant, limit: Duration) -> Outcome {
    let t = start.elapsed();
    ensure!(t < limit, "took {t:?}, limit {limit:?}");
    Ok(())
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let (ctx, ideal) = example(&[2, 1]);
    let gb = buchberger(&ideal);
    ensure!(
        gb.rational_initial_ideal() == vec![vec![0, 2], vec![1, 0]],
        "initial ideal {:?}",
        gb.rational_initial_ideal()
    );
    ensure!(gb.holonomic_rank() == Rank::Finite(2), "rank {}", gb.holonomic_rank());
    ensure!(gb.standard_monomials() == Ok(vec![vec![0, 0], vec![0, 1]]), "standard monomials");
    let nf = |s: &str| normal_form(parse_expr(&ctx, s).unwrap(), &gb);
    let two = |c1: &str, c0: &str| {
        RationalWeylElement::from_terms(&ctx, [(vec![0, 1], func(&ctx, c1)), (vec![0, 0], func(&ctx, c0))])
    };
    ensure!(nf("dx") == two("-y/x", "-1/x"), "NF(dx) = {}", print_rational(&nf("dx")));
    ensure!(
        nf("dx*dy") == two("-(x + y)/(x*(x - y))", "-1/(x*(x - y))"),
        "NF(dx*dy) = {}",
        print_rational(&nf("dx*dy"))
    );
    ensure!(nf("dy^2") == two("(3*y - x)/((x - y)*y)", "1/((x - y)*y)"), "NF(dy^2) = {}", print_rational(&nf("dy^2")));
    let sys = connection_matrices_for(&gb).map_err(|e| e.to_string())?;
    let a1 = matrix(&ctx, &["-1/x, -y/x", "-1/(x*(x - y)), -(x + y)/(x*(x - y))"]);
    let a2 = matrix(&ctx, &["0, 1", "1/((x - y)*y), (3*y - x)/((x - y)*y)"]);
    ensure!(sys.matrices() == [a1, a2], "connection matrices differ");
    within(start, Duration::from_secs(1))
}

fn criterion_2() -> Outcome {
    let (ctx, ideal) = example(&[1, 2]);
    ensure!(standard_monomials(&ideal) == Ok(vec![vec![0, 0], vec![1, 0]]), "standard monomials");
    let sys = connection_matrices(&ideal).map_err(|e| e.to_string())?;
    let ax = matrix(&ctx, &["0, 1", "-1/(x^2 - x*y), (-3*x + y)/(x^2 - x*y)"]);
    let ay = matrix(&ctx, &["-1/y, -x/y", "1/(x*y - y^2), (x + y)/(x*y - y^2)"]);
    ensure!(sys.matrices() == [ax, ay], "connection matrices differ");
    Ok(())
}

fn criterion_3() -> Outcome {
    let (ctx, ideal) = example(&[2, 1]);
    let b = vec![parse_expr(&ctx, "1").unwrap(), parse_expr(&ctx, "dx").unwrap()];
    let g = gauge_matrix(&ideal, &b).map_err(|e| e.to_string())?;
    ensure!(g.matrix() == &matrix(&ctx, &["1, 0", "-1/x, -y/x"]), "gauge matrix differs");
    let transformed = gauge_transform(&g, &connection_matrices(&ideal).unwrap()).map_err(|e| e.to_string())?;
    let (_, other) = example(&[1, 2]);
    let direct = connection_matrices(&other).unwrap();
    ensure!(transformed.matrices() == direct.matrices(), "transformed system differs from the other weight");
    Ok(())
}

fn criterion_4() -> Outcome {
    let f = Fixture::get("epsilon");
    let sys = connection_matrices_in_basis(&f.ideal, &f.basis()).map_err(|e| e.to_string())?;
    ensure!(sys.matrices() == [matrix(&f.ctx, &["0, eps", "0, eps/x"])], "matrix differs");
    ensure!(sys.is_epsilon_factorized("eps") == Ok(Some(-1)), "factorization {:?}", sys.is_epsilon_factorized("eps"));
    Ok(())
}

const WEIGHTS: [[i64; 3]; 3] = [[1, 1, 1], [2, 1, 1], [1, 2, 1]];

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let fixtures = finite_fixtures();
    ensure!(fixtures.len() >= 6, "corpus too small");
    ensure!(fixtures.iter().any(|f| f.name == "gauss"), "Gauss operator missing");
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for f in &fixtures {
        for w in WEIGHTS {
            let sys = connection_matrices(&f.with_weights(&w)).map_err(|e| format!("{}: {e}", f.name))?;
            ensure!(is_integrable(sys.matrices()) == Ok(true), "{} with weights {w:?}", f.name);
            let g = random_gauge(&mut rng, sys.ctx(), sys.rank().min(2));
            if g.size() == sys.rank() {
                let t = gauge_transform(&g, &sys).unwrap();
                ensure!(is_integrable(t.matrices()) == Ok(true), "{} after a random gauge", f.name);
            }
        }
        if !f.input.basis.is_empty() {
            let sys = connection_matrices_in_basis(&f.ideal, &f.basis()).map_err(|e| e.to_string())?;
            ensure!(sys.is_integrable(), "{} in its own basis", f.name);
        }
    }
    within(start, Duration::from_secs(5))
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for f in finite_fixtures() {
        let gb = buchberger(&f.ideal);
        let ctx = &f.ctx;
        for _ in 0..50 {
            let mut p = RationalWeylElement::zero(ctx);
            for _ in 0..rng.gen_range(1..=3) {
                let g = &gb.elements()[rng.gen_range(0..gb.len())];
                let shift = random_d_exponent(&mut rng, ctx.n(), 1);
                let c = random_function(&mut rng, ctx);
                p = &p + &g.to_rational().d_power_mul(&shift).scale(&c);
            }
            let r = normal_form(p.clone(), &gb);
            ensure!(r.is_zero(), "{}: element of the ideal has normal form {}", f.name, print_rational(&r));
        }
        for _ in 0..50 {
            let p = random_rational_element(&mut rng, ctx, 3, 2);
            let q = random_rational_element(&mut rng, ctx, 3, 2);
            let a = random_function(&mut rng, ctx);
            let b = random_function(&mut rng, ctx);
            let (np, nq) = (normal_form(p.clone(), &gb), normal_form(q.clone(), &gb));
            ensure!(normal_form(np.clone(), &gb) == np, "{}: normal form is not idempotent", f.name);
            let lhs = normal_form(&p.scale(&a) + &q.scale(&b), &gb);
            ensure!(lhs == &np.scale(&a) + &nq.scale(&b), "{}: normal form is not linear", f.name);
        }
    }
    within(start, Duration::from_secs(10))
}

fn criterion_7() -> Outcome {
    let (ctx, ideal) = example(&[2, 1]);
    let sys = connection_matrices(&ideal).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let id = GaugeMatrix::identity(ctx.nvars(), 2);
    ensure!(gauge_transform(&id, &sys).unwrap().matrices() == sys.matrices(), "identity gauge changes the system");
    for _ in 0..20 {
        let g1 = random_gauge(&mut rng, &ctx, 2);
        let g2 = random_gauge(&mut rng, &ctx, 2);
        let t1 = gauge_transform(&g1, &sys).unwrap();
        let back = gauge_transform(&g1.inverse(), &t1).unwrap();
        ensure!(back.matrices() == sys.matrices(), "inverse gauge does not undo");
        let stepwise = gauge_transform(&g2, &t1).unwrap();
        let composed = gauge_transform(&g2.compose(&g1).unwrap(), &sys).unwrap();
        ensure!(stepwise.matrices() == composed.matrices(), "composition law fails");
        ensure!(stepwise.basis() == composed.basis(), "composed bases differ");
        ensure!(gauge_transform(&id, &t1).unwrap() == t1, "identity gauge changes a transformed system");
    }
    Ok(())
}

fn criterion_8() -> Outcome {
    for f in all_fixtures() {
        let ranks: Vec<Rank> = WEIGHTS.iter().map(|w| holonomic_rank(&f.with_weights(w))).collect();
        ensure!(ranks.iter().all(|r| *r == ranks[0]), "{}: ranks {ranks:?}", f.name);
    }
    Ok(())
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let f = Fixture::get("free_direction");
    ensure!(f.ctx.n() == 2, "fixture should have two variables");
    ensure!(holonomic_rank(&f.ideal) == Rank::Infinite, "rank of <dx> should be infinite");
    ensure!(connection_matrices(&f.ideal) == Err(Error::InfiniteRank), "expected InfiniteRank");
    within(start, Duration::from_secs(1))?;
    let c = Fixture::get("constants");
    ensure!(holonomic_rank(&c.ideal) == Rank::Finite(1), "rank of <dx, dy>");
    let sys = connection_matrices(&c.ideal).unwrap();
    ensure!(sys.matrices().len() == 2, "one matrix per variable");
    for a in sys.matrices() {
        ensure!(a.nrows() == 1 && a.ncols() == 1 && a.is_zero(), "expected a zero 1x1 matrix");
    }
    Ok(())
}

fn random_weyl(rng: &mut ChaCha8Rng, ctx: &Arc<WeylContext>) -> WeylElement {
    let nv = ctx.nvars();
    let mut out = WeylElement::zero(ctx);
    for _ in 0..rng.gen_range(0..=4) {
        let x = random_d_exponent(rng, ctx.n(), 2);
        let d = random_d_exponent(rng, ctx.n(), 2);
        let k = rng.gen_range(-5i64..=5);
        let mut c = RationalFunction::from_int(nv, k);
        if rng.gen_bool(0.3) {
            c = &c * &RationalFunction::var(nv, ctx.n());
        }
        if rng.gen_bool(0.2) {
            c = &c / &RationalFunction::from_int(nv, 3);
        }
        out = &out + &WeylElement::monomial(ctx, WeylMonomial::new(x, d), c);
    }
    out
}

fn run_cli(args: &[&str]) -> std::result::Result<String, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_connmat")).args(args).output().map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("{args:?} failed: {}", String::from_utf8_lossy(&out.stderr)));
    }
    let first = String::from_utf8(out.stdout).map_err(|e| e.to_string())?;
    let again = Command::new(env!("CARGO_BIN_EXE_connmat")).args(args).output().map_err(|e| e.to_string())?;
    if again.stdout != first.as_bytes() {
        return Err(format!("{args:?} is not deterministic"));
    }
    Ok(first)
}

fn cli_matrices(ctx: &Arc<WeylContext>, args: &[&str]) -> std::result::Result<Vec<Matrix>, String> {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let report = Report::from_json(&run_cli(&full)?).map_err(|e| e.to_string())?;
    report.matrices.unwrap_or_default().iter().map(|m| matrix_from_json(ctx, m).map_err(|e| e.to_string())).collect()
}

fn criterion_10() -> Outcome {
    let ctx = WeylContext::with_int_weights(&["x", "y"], &["eps"], &[2, 1]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..50 {
        let p = random_weyl(&mut rng, &ctx);
        let text = print_weyl(&p);
        ensure!(parse_weyl(&ctx, &text) == Ok(p), "round trip fails for {text}");
    }
    for _ in 0..50 {
        let p = random_rational_element(&mut rng, &ctx, 4, 2);
        let text = print_rational(&p);
        ensure!(parse_expr(&ctx, &text) == Ok(p), "round trip fails for {text}");
    }

    let v21 = fixture_path("example_v21");
    let (c21, _) = example(&[2, 1]);
    ensure!(run_cli(&["rank", "--file", &v21])? == "2\n", "rank");
    ensure!(run_cli(&["standard-monomials", "--file", &v21])? == "1\ndy\n", "standard monomials");
    ensure!(run_cli(&["normal-form", "--file", &v21, "--expr", "dx"])? == "(-y)/x*dy + (-1)/x\n", "normal form");
    let inline = ["connection", "--vars", "x,y", "--weights", "2,1", "--ideal", "x*dx^2-y*dy^2+dx-dy; x*dx+y*dy+1"];
    let a1 = matrix(&c21, &["-1/x, -y/x", "-1/(x*(x - y)), -(x + y)/(x*(x - y))"]);
    let a2 = matrix(&c21, &["0, 1", "1/((x - y)*y), (3*y - x)/((x - y)*y)"]);
    ensure!(cli_matrices(&c21, &inline)? == [a1, a2], "criterion 1 matrices via the CLI");

    let v12 = fixture_path("example_v12");
    let ax = matrix(&c21, &["0, 1", "-1/(x^2 - x*y), (-3*x + y)/(x^2 - x*y)"]);
    let ay = matrix(&c21, &["-1/y, -x/y", "1/(x*y - y^2), (x + y)/(x*y - y^2)"]);
    ensure!(run_cli(&["standard-monomials", "--file", &v12])? == "1\ndx\n", "standard monomials for (1,2)");
    ensure!(
        cli_matrices(&c21, &["connection", "--file", &v12])? == [ax.clone(), ay.clone()],
        "criterion 2 via the CLI"
    );

    let g = run_cli(&["gauge-matrix", "--file", &v21, "--basis", "1; dx"])?;
    ensure!(g == "[1, 0]\n[(-1)/x, (-y)/x]\n", "gauge matrix printed as {g:?}");
    let transformed = cli_matrices(&c21, &["gauge-transform", "--file", &v21, "--gauge", "1, 0; -1/x, -y/x"])?;
    ensure!(transformed == [ax, ay], "criterion 3 via the CLI");

    let eps = fixture_path("epsilon");
    let ce = WeylContext::with_int_weights(&["x"], &["eps"], &[1]).unwrap();
    ensure!(
        cli_matrices(&ce, &["connection-in-basis", "--file", &eps])? == [matrix(&ce, &["0, eps", "0, eps/x"])],
        "criterion 4 matrices via the CLI"
    );
    ensure!(run_cli(&["check-eps-factorized", "--file", &eps])? == "true (k = -1)\n", "criterion 4 check via the CLI");
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("two-variable example, weight (2,1)", criterion_1),
        ("two-variable example, weight (1,2)", criterion_2),
        ("gauge matrix and transform", criterion_3),
        ("epsilon-factorized example", criterion_4),
        ("integrability over the fixture corpus", criterion_5),
        ("normal-form oracles", criterion_6),
        ("gauge group laws", criterion_7),
        ("rank invariance under weights", criterion_8),
        ("degenerate ideals", criterion_9),
        ("frontend round trip and CLI", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let ms = start.elapsed().as_millis();
        match result {
            Ok(()) => println!("criterion {:>2} PASS  {name} ({ms} ms)", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name} ({ms} ms): {e}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

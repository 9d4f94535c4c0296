//! One PASS/FAIL line per acceptance criterion, each with a pinned wall-clock
//! limit. All comparisons are exact; no numeric tolerance is involved.

mod common;

use std::time::{Duration, Instant};

use common::{oracle_families, oracle_mismatch, parse, polygen};
use polygen::closedform::{kpoly, KPart};
use polygen::identities::{run_check, run_suite, Bounds, CheckId, CheckReport, Suite};

/// `(family, r, n, listed value)` for the k1, k2 and K value lists.
const LISTED: &[(&str, usize, usize, &str)] = &[
    ("k1", 2, 0, "1"),
    ("k1", 2, 1, "x+u1"),
    ("k1", 2, 2, "(x+u1)^2+2u2-y^2"),
    ("k1", 2, 3, "(x+u1)^3+6(x+u1)u2-3y^2(x+u1)"),
    ("k1", 3, 0, "1"),
    ("k1", 3, 1, "x+u1"),
    ("k1", 3, 2, "(x+u1)^2+2u2-y^2"),
    ("k1", 3, 3, "(x+u1)^3+6(x+u1)u2+6u3-3y^2(x+u1)"),
    ("k2", 2, 0, "0"),
    ("k2", 2, 1, "y"),
    ("k2", 2, 2, "2y(x+u1)"),
    ("k2", 2, 3, "3y(x+u1)^2+6yu2-y^3"),
    ("k2", 3, 0, "0"),
    ("k2", 3, 1, "y"),
    ("k2", 3, 2, "2y(x+u1)"),
    ("k2", 3, 3, "3y(x+u1)^2+6yu2-y^3"),
    ("K", 2, 0, "1"),
    ("K", 2, 1, "x+u1+iy"),
    ("K", 2, 2, "(x+u1)^2+2u2-y^2+2iy(x+u1)"),
    ("K", 2, 3, "(x+u1)^3+6(x+u1)u2-3y^2(x+u1)+i(3y(x+u1)^2+6yu2-y^3)"),
    ("K", 3, 0, "1"),
    ("K", 3, 1, "x+u1+iy"),
    ("K", 3, 2, "(x+u1)^2+2u2-y^2+2iy(x+u1)"),
    ("K", 3, 3, "(x+u1)^3+6(x+u1)u2+6u3-3y^2(x+u1)+i(3y(x+u1)^2+6yu2-y^3)"),
];

type Outcome = Result<(), String>;

struct Runner {
    failures: Vec<String>,
}

impl Runner {
    fn criterion(&mut self, id: u32, what: &str, limit_s: u64, body: impl FnOnce() -> Outcome) {
        let limit = Duration::from_secs(limit_s);
        let start = Instant::now();
        let result = body();
        let took = start.elapsed();
        let result = result.and_then(|()| {
            if took < limit {
                Ok(())
            } else {
                Err(format!("took {took:.2?}, limit {limit:?}"))
            }
        });
        match &result {
            Ok(()) => println!("PASS [{id:>2}] {what} ({took:.2?} < {limit_s}s)"),
            Err(e) => {
                println!("FAIL [{id:>2}] {what} ({took:.2?}, limit {limit_s}s): {e}");
                self.failures.push(format!("criterion {id}: {e}"));
            }
        }
    }
}

fn all_passed(reports: &[CheckReport]) -> Outcome {
    let failed: Vec<String> = reports
        .iter()
        .filter(|r| !r.passed)
        .map(|r| format!("{} {:?}", r.id.name(), r.counterexample))
        .collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(failed.join("; "))
    }
}

fn checks(ids: &[CheckId], n_max: usize, r_max: Option<usize>, z_max: Option<usize>) -> Outcome {
    let bounds = Bounds { n_max: Some(n_max), r_max, z_max };
    let reports = ids.iter().map(|&id| run_check(id, &bounds)).collect::<Result<Vec<_>, _>>().map_err(|e| e.to_string())?;
    all_passed(&reports)
}

fn suite(s: Suite, n_max: usize, r_max: Option<usize>, z_max: Option<usize>) -> Outcome {
    let bounds = Bounds { n_max: Some(n_max), r_max, z_max };
    all_passed(&run_suite(s, &bounds).map_err(|e| e.to_string())?)
}

fn main() {
    let mut run = Runner { failures: Vec::new() };

    run.criterion(1, "listed k1, k2 and K values reproduced", 1, || {
        for &(fam, r, n, text) in LISTED {
            let got = match fam {
                "k1" => kpoly(KPart::K1, n, r).map(|v| v.into_complex()),
                "k2" => kpoly(KPart::K2, n, r).map(|v| v.into_complex()),
                _ => kpoly(KPart::K, n, r).map(|v| v.into_complex()),
            }
            .map_err(|e| e.to_string())?;
            if got != parse(text) {
                return Err(format!("{fam}({n}; r = {r}) = {} but listed {text}", got.canonical_string()));
            }
        }
        Ok(())
    });

    run.criterion(2, "explicit formulas equal generating-function coefficients, n <= 12, r <= 4", 20, || {
        let failures: Vec<String> = oracle_families(4).iter().filter_map(|f| oracle_mismatch(f, 12)).collect();
        if failures.is_empty() {
            Ok(())
        } else {
            Err(failures.join("; "))
        }
    });

    run.criterion(3, "B_n^(-1)(0) = 1/(n+1) for n <= 30 and the Stirling relation for n <= 10, k <= 5", 2, || {
        checks(&[CheckId::Riemann1y4d], 30, None, None)?;
        checks(&[CheckId::StirlingRemark], 10, None, None)
    });

    run.criterion(4, "k1/k2 convolutions, combined corollary and C1 linear combination, n <= 10, r <= 3", 5, || {
        checks(&[CheckId::K1hc, CheckId::K2hs, CheckId::KCorollary, CheckId::C1LinearComb], 10, Some(3), None)
    });

    run.criterion(5, "NK1-NK3, averages, convolution theorems and reduction corollaries, n <= 10, z <= 3", 10, || {
        suite(Suite::Section3, 10, Some(3), Some(3))
    });

    run.criterion(6, "hypergeometric N forms to order 12 and cleared-denominator kernel identities, n <= 12", 3, || {
        checks(
            &[
                CheckId::NHypergeom0f0,
                CheckId::NHypergeom0f1,
                CheckId::Riemann1y4a,
                CheckId::Riemann1y4b,
                CheckId::Riemann1y4c,
            ],
            12,
            None,
            None,
        )
    });

    run.criterion(7, "s-reduced Chebyshev and Dickson identities, n <= 16, r <= 3", 5, || {
        suite(Suite::Section5, 16, Some(3), None)
    });

    run.criterion(8, "Chebyshev convolution, derivative and recurrence identities, n <= 16", 5, || {
        suite(Suite::Section6, 16, Some(3), None)
    });

    run.criterion(9, "variant Dickson GF and Gould-Hopper sum disagreements confirmed", 1, || {
        let bounds = Bounds::default();
        let reports = run_suite(Suite::Discrepancies, &bounds).map_err(|e| e.to_string())?;
        all_passed(&reports)?;
        let gf = reports.iter().find(|r| r.id == CheckId::DicksonGfDiscrepancy).ok_or("missing pin")?;
        let witness = gf.witness.as_ref().ok_or("no witness recorded")?;
        if witness.inputs.get("n").map(String::as_str) != Some("1") {
            return Err(format!("Dickson GF witness at {:?}, expected n = 1", witness.inputs));
        }
        let gh = reports.iter().find(|r| r.id == CheckId::GouldHopperSumDiscrepancy).ok_or("missing pin")?;
        let witness = gh.witness.as_ref().ok_or("no witness recorded")?;
        if witness.inputs.get("n").map(String::as_str) != Some("2") || witness.inputs.get("j").map(String::as_str) != Some("2") {
            return Err(format!("Gould-Hopper witness at {:?}, expected n = j = 2", witness.inputs));
        }
        Ok(())
    });

    run.criterion(10, "`polygen check --suite all` exits 0", 60, || {
        let (code, out, err) = polygen(&["check", "--suite", "all"]);
        if code == 0 {
            Ok(())
        } else {
            Err(format!("exit {code}\n{out}{err}"))
        }
    });

    if !run.failures.is_empty() {
        eprintln!("{} acceptance criteria failed", run.failures.len());
        std::process::exit(1);
    }
    println!("all acceptance criteria passed");
}

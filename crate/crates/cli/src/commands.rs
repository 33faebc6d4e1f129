//! One function per subcommand, each producing a [`Report`].

use affmult::multiplicities::{
    dominant_below, eta_from_xi, f_i_xi, mu_split, outer_multiplicity_terms, tau_terms,
};
use affmult::prelude::*;
use affmult::tableaux::{dominant_characters, mw_shapes};
use affmult::multiplicities::ball_bound;
use affmult::weyl_orbits::{b_vector, enumerate_gamma, r_of, socle_descent};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::output::{affine, finite, list, rational, Report};
use crate::{CliError, Command, WeightArgs};

type CliResult<T> = std::result::Result<T, CliError>;

/// Attaches the offending parameter to a library error.
fn param<T>(name: &str, r: Result<T>) -> CliResult<T> {
    r.map_err(|e| CliError::Validation(format!("--{name}: {e}")))
}

fn internal<T>(r: Result<T>) -> CliResult<T> {
    r.map_err(|e| CliError::Validation(e.to_string()))
}

fn check_rank(n: usize) -> CliResult<()> {
    if n == 0 {
        return Err(CliError::Validation("--n: rank must be at least 1".into()));
    }
    Ok(())
}

fn check_index(name: &str, i: usize, n: usize) -> CliResult<()> {
    if i > n {
        return Err(CliError::Validation(format!("--{name}: {i} is outside 0..={n}")));
    }
    Ok(())
}

fn check_len(name: &str, len: usize, want: usize) -> CliResult<()> {
    if len != want {
        return Err(CliError::Validation(format!("--{name}: expected {want} entries, got {len}")));
    }
    Ok(())
}

fn finite_weight(name: &str, n: usize, v: &[i64]) -> CliResult<FiniteWeight> {
    check_len(name, v.len(), n)?;
    param(name, FiniteWeight::new(v.to_vec()))
}

fn level_two(n: usize, w: &WeightArgs) -> CliResult<AffineWeight> {
    check_len("cvals", w.cvals.len(), n + 1)?;
    let xi = param("cvals", AffineWeight::from_cvals(&w.cvals, w.degree))?;
    if !xi.is_dominant() {
        return Err(CliError::Validation(format!("--cvals: {xi} is not dominant")));
    }
    if xi.level != 2 {
        return Err(CliError::Validation(format!("--cvals: {xi} has level {}, expected 2", xi.level)));
    }
    Ok(xi)
}

pub fn run(cmd: &Command) -> CliResult<Report> {
    match cmd {
        Command::Tau { n, i, eta } => tau(*n, *i, eta),
        Command::Socle { n, level, mu } => socle(*n, *level, mu),
        Command::Orbit { n, level, mu } => orbit(*n, *level, mu),
        Command::Gamma { n, i, xi } => gamma(*n, *i, xi),
        Command::FlagMult { n, lambda, mu, r } => flag(*n, lambda, mu, *r),
        Command::Multiplicity { n, i, xi, oracle } => multiplicity(*n, *i, xi, *oracle),
        Command::Limit { n, i, xi, k_max } => limit(*n, *i, xi, *k_max),
        Command::TensorGeneral { n, i, j, depth, oracle } => tensor_general(*n, *i, *j, *depth, *oracle),
        Command::Verify { n, eta0_max, oracle_depth } => verify(*n, *eta0_max, *oracle_depth),
    }
}

fn tau(n: usize, i: usize, eta: &[u32]) -> CliResult<Report> {
    check_rank(n)?;
    check_index("i", i, n)?;
    check_len("eta", eta.len(), n + 1)?;
    let eta = param("eta", ContentCharacter::new(eta.to_vec()))?;
    let terms = param("eta", tau_terms(&eta, i))?;
    let value: u64 = terms.iter().map(|t| t.value).sum();
    let shapes = internal(mw_shapes(&eta, i))?;
    let brute = shapes.len() as u64;
    let rows = shapes.iter().map(|s| vec![s.to_string(), s.size().to_string()]).collect();
    let report = Report {
        command: "tau",
        params: json!({ "n": n, "i": i, "eta": eta.eta() }),
        result: json!({
            "tau": value,
            "bruteforce": brute,
            "shapes": shapes.iter().map(|s| s.parts().to_vec()).collect::<Vec<_>>(),
            "terms": terms.iter().map(|t| json!({
                "s": t.member.s,
                "m": t.member.pair.m,
                "p": t.member.pair.p,
                "b": t.bounds,
                "argument": rational(t.argument),
                "value": t.value,
            })).collect::<Vec<_>>(),
        }),
        formula: "tau = sum over Gamma_{j,k} of rho_{b(m,p)}(f_{i,eta}(a(m,p)))",
        summary: vec![format!("tau = {value}"), format!("MW tableaux: {brute}")],
        headers: vec!["shape", "size"],
        rows,
    };
    if value != brute {
        let msg = format!("n={n} i={i} eta={}: formula {value}, tableaux {brute}", list(eta.eta()));
        return Err(CliError::Mismatch(Box::new(report), msg));
    }
    Ok(report)
}

fn socle(n: usize, level: i64, mu: &[i64]) -> CliResult<Report> {
    check_rank(n)?;
    let mu = finite_weight("mu", n, mu)?;
    let formula = param("level", socle_formula(level, &mu))?;
    let oracle = internal(socle_oracle(&AffineWeight::new(mu.w0(), level, Rational::from_integer(0))))?;
    let cvals = formula.cvals();
    let display = AffineWeight::new(formula.finite.clone(), formula.level, Rational::from_integer(0)).to_string();
    let report = Report {
        command: "socle",
        params: json!({ "n": n, "level": level, "mu": mu.coords() }),
        result: json!({ "socle": affine(&formula), "descent": affine(&oracle) }),
        formula: "soc(l, mu) = sum_j (m'_{j+1} - m'_{j+2}) Lambda_{p-j}",
        summary: vec![format!("{display}, degree {}", rational(formula.degree))],
        headers: vec!["cvals", "degree"],
        rows: vec![vec![list(&cvals), rational(formula.degree)]],
    };
    if formula != oracle {
        let msg = format!("level {level}, mu {mu}: formula {formula}, descent {oracle}");
        return Err(CliError::Mismatch(Box::new(report), msg));
    }
    Ok(report)
}

fn orbit(n: usize, level: i64, mu: &[i64]) -> CliResult<Report> {
    check_rank(n)?;
    let mu = finite_weight("mu", n, mu)?;
    let pair = param("level", OrbitPair::from_weight(level, &mu))?;
    let (soc, steps) = internal(socle_descent(&AffineWeight::new(mu.w0(), level, Rational::from_integer(0))))?;
    let b = if level == 2 && mu.is_dominant() { b_vector(&pair).ok() } else { None };
    let mut rows = vec![
        vec!["m".to_string(), list(&pair.m)],
        vec!["p".to_string(), list(&pair.p)],
        vec!["a".to_string(), list(&pair.a())],
        vec!["res(p)".to_string(), pair.res().to_string()],
        vec!["socle".to_string(), soc.to_string()],
        vec!["reflections".to_string(), steps.to_string()],
    ];
    if let Some(b) = &b {
        rows.push(vec!["b".to_string(), list(b)]);
    }
    Ok(Report {
        command: "orbit",
        params: json!({ "n": n, "level": level, "mu": mu.coords() }),
        result: json!({
            "m": pair.m,
            "p": pair.p,
            "a": pair.a(),
            "res": pair.res(),
            "socle": affine(&soc),
            "reflections": steps,
            "b": b,
        }),
        formula: "a_i = l p_i + m_i with 0 < m_i <= l",
        summary: vec![],
        headers: vec!["field", "value"],
        rows,
    })
}

fn gamma(n: usize, i: usize, xi: &WeightArgs) -> CliResult<Report> {
    check_rank(n)?;
    check_index("i", i, n)?;
    let xi = level_two(n, xi)?;
    let bound = internal(ball_bound(i, &xi))?;
    let members = internal(enumerate_gamma(&xi, bound))?;
    let mut rows = Vec::new();
    let mut items = Vec::new();
    for g in &members {
        let r = internal(r_of(&g.mu, &xi))?;
        let f = internal(f_i_xi(i, &xi, &g.mu))?;
        let b = internal(mu_split(&g.mu))?.bounds;
        let value = internal(rho_multi(f, &b, None))?;
        rows.push(vec![
            list(g.mu.coords()),
            list(&g.pair.m),
            list(&g.pair.p),
            rational(g.norm),
            rational(r),
            rational(f),
            value.to_string(),
        ]);
        items.push(json!({
            "mu": finite(&g.mu),
            "m": g.pair.m,
            "p": g.pair.p,
            "norm": rational(g.norm),
            "r": rational(r),
            "f": rational(f),
            "rho": value,
        }));
    }
    Ok(Report {
        command: "gamma",
        params: json!({ "n": n, "i": i, "xi": affine(&xi) }),
        result: json!({ "ball": rational(bound), "members": items }),
        formula: "Gamma_xi = { mu dominant : soc(2, mu) = xi mod delta }",
        summary: vec![format!("Γ for {xi}, (μ,μ) <= {}", rational(bound))],
        headers: vec!["mu", "m", "p", "norm", "r", "f", "rho"],
        rows,
    })
}

fn flag(n: usize, lambda: &[i64], mu: &[i64], r: Option<Rational>) -> CliResult<Report> {
    check_rank(n)?;
    let lambda = finite_weight("lambda", n, lambda)?;
    let mu = finite_weight("mu", n, mu)?;
    if !lambda.is_dominant() {
        return Err(CliError::Validation(format!("--lambda: {lambda} is not dominant")));
    }
    if !mu.is_dominant() {
        return Err(CliError::Validation(format!("--mu: {mu} is not dominant")));
    }
    let poly = internal(flag_multiplicity_poly(&lambda, &mu))?;
    let params = json!({ "n": n, "lambda": lambda.coords(), "mu": mu.coords(), "r": r.map(rational) });
    let terms: Vec<(Rational, i64)> =
        poly.poly.terms().map(|(e, c)| (poly.shift + Rational::from_integer(e), c)).collect();
    let (summary, result) = match r {
        Some(r) => {
            let v = internal(flag_multiplicity_at(&lambda, &mu, r))?;
            (vec![format!("[D(1,{lambda}) : D(2,{mu},{r})] = {v}")], json!({ "coefficient": v }))
        }
        None => (
            vec![format!("[D(1,{lambda}) : D(2,{mu})](q) = {poly}")],
            json!({
                "shift": rational(poly.shift),
                "terms": terms.iter().map(|(e, c)| json!({ "exponent": rational(*e), "coefficient": c })).collect::<Vec<_>>(),
            }),
        ),
    };
    Ok(Report {
        command: "flag-mult",
        params,
        result,
        formula: "q^{(lambda+mu_1, lambda-mu)/2} prod_j [a_j + mu_0(h_j) choose a_j]_q, a = a^{lambda-mu}",
        summary,
        headers: vec!["exponent", "coefficient"],
        rows: terms.iter().map(|(e, c)| vec![rational(*e), c.to_string()]).collect(),
    })
}

fn multiplicity(n: usize, i: usize, xi: &WeightArgs, oracle: bool) -> CliResult<Report> {
    check_rank(n)?;
    check_index("i", i, n)?;
    let xi = level_two(n, xi)?;
    let terms = internal(outer_multiplicity_terms(n, i, &xi))?;
    let value: u64 = terms.iter().map(|t| t.value).sum();
    let checked = if oracle {
        let depth = eta_from_xi(i, &xi).map(|e| e.eta()[0]).map_err(|_| {
            CliError::Validation(format!("--cvals: {xi} is not below Λ0 + Λ{i}"))
        })?;
        let a = internal(AffineWeight::fundamental(n, 0))?;
        let b = internal(AffineWeight::fundamental(n, i))?;
        Some(internal(tensor_outer_multiplicities(&a, &b, depth))?.multiplicity(&xi))
    } else {
        None
    };
    let rows = terms
        .iter()
        .map(|t| vec![list(t.mu.coords()), list(&t.bounds), rational(t.argument), t.value.to_string()])
        .collect();
    let mut summary = vec![format!("[V(Λ0) ⊗ V(Λ{i}) : V({xi})] = {value}")];
    if let Some(o) = checked {
        summary.push(format!("oracle: {o}"));
    }
    let report = Report {
        command: "multiplicity",
        params: json!({ "n": n, "i": i, "xi": affine(&xi), "oracle": oracle }),
        result: json!({
            "multiplicity": value,
            "oracle": checked,
            "terms": terms.iter().map(|t| json!({
                "mu": finite(&t.mu),
                "b": t.bounds,
                "argument": rational(t.argument),
                "value": t.value,
            })).collect::<Vec<_>>(),
        }),
        formula: "sum over mu in Gamma_xi of rho_{mu_0}(f_{i,xi}(mu))",
        summary,
        headers: vec!["mu", "mu_0", "f", "rho"],
        rows,
    };
    if let Some(o) = checked.filter(|&o| o != value) {
        let msg = format!("n={n} i={i} xi={xi}: formula {value}, oracle {o}");
        return Err(CliError::Mismatch(Box::new(report), msg));
    }
    Ok(report)
}

fn limit(n: usize, i: usize, xi: &WeightArgs, k_max: u32) -> CliResult<Report> {
    check_rank(n)?;
    check_index("i", i, n)?;
    let xi = level_two(n, xi)?;
    let res = internal(outer_multiplicity_limit(n, i, &xi, k_max))?;
    let formula = internal(outer_multiplicity_formula(n, i, &xi))?;
    let stabilized = res.stabilized();
    let rows = res
        .terms
        .iter()
        .map(|t| {
            vec![
                list(t.mu.coords()),
                t.threshold.to_string(),
                t.stabilized_at.map_or("no".into(), |k| k.to_string()),
                list(&t.sequence),
            ]
        })
        .collect();
    let mut summary = vec![format!("limit at k = {k_max}: {}", res.value)];
    if !stabilized {
        summary.push(format!("not stabilized by k = {k_max}; raise --k-max"));
    }
    let report = Report {
        command: "limit",
        params: json!({ "n": n, "i": i, "xi": affine(&xi), "k_max": k_max }),
        result: json!({
            "value": res.value,
            "stabilized": stabilized,
            "formula": formula,
            "terms": res.terms.iter().map(|t| json!({
                "mu": finite(&t.mu),
                "threshold": t.threshold,
                "stabilized_at": t.stabilized_at,
                "sequence": t.sequence,
            })).collect::<Vec<_>>(),
        }),
        formula: "lim_k [D(1, omega_i + k theta) : D(2, mu, r(mu,xi) + k(|omega_i| + k))]",
        summary,
        headers: vec!["mu", "threshold", "stable from", "sequence"],
        rows,
    };
    if stabilized && res.value != formula {
        let msg = format!("n={n} i={i} xi={xi}: limit {}, formula {formula}", res.value);
        return Err(CliError::Mismatch(Box::new(report), msg));
    }
    Ok(report)
}

fn tensor_general(n: usize, i: usize, j: usize, depth: u32, oracle: bool) -> CliResult<Report> {
    check_rank(n)?;
    check_index("i", i, n)?;
    check_index("j", j, n)?;
    let a = internal(AffineWeight::fundamental(n, i))?;
    let b = internal(AffineWeight::fundamental(n, j))?;
    let top = internal(a.add(&b))?;
    let decomposition = if oracle { Some(internal(tensor_outer_multiplicities(&a, &b, depth))?) } else { None };
    let mut rows = Vec::new();
    let mut items = Vec::new();
    let mut mismatch = None;
    for xi in internal(dominant_below(&top, depth))? {
        let m = internal(general_fundamental(n, i, j, &xi))?;
        let o = decomposition.as_ref().map(|d| d.multiplicity(&xi));
        if o.is_some_and(|o| o != m) && mismatch.is_none() {
            mismatch = Some(format!("n={n} i={i} j={j} xi={xi}: formula {m}, oracle {}", o.unwrap_or(0)));
        }
        if m == 0 && o.unwrap_or(0) == 0 {
            continue;
        }
        let mut row = vec![xi.to_string(), list(&xi.cvals()), rational(xi.degree), m.to_string()];
        if let Some(o) = o {
            row.push(o.to_string());
        }
        rows.push(row);
        items.push(json!({ "xi": affine(&xi), "multiplicity": m, "oracle": o }));
    }
    let mut headers = vec!["xi", "cvals", "degree", "multiplicity"];
    if oracle {
        headers.push("oracle");
    }
    let report = Report {
        command: "tensor-general",
        params: json!({ "n": n, "i": i, "j": j, "depth": depth, "oracle": oracle }),
        result: json!({ "components": items }),
        formula: "[V(Lambda_i) x V(Lambda_j) : V(xi)] = [V(Lambda_0) x V(Lambda_{j-i}) : V(pi^{-i} xi - c_i delta)]",
        summary: vec![format!("V(Λ{i}) ⊗ V(Λ{j}) to depth {depth}")],
        headers,
        rows,
    };
    match mismatch {
        Some(msg) => Err(CliError::Mismatch(Box::new(report), msg)),
        None => Ok(report),
    }
}

struct Instance {
    n: usize,
    i: usize,
    eta: ContentCharacter,
}

struct Checked {
    formula: u64,
    tableaux: u64,
    orbit: u64,
    oracle: Option<u64>,
    limit: u64,
    stabilized: bool,
}

impl Checked {
    fn pass(&self) -> bool {
        self.formula == self.tableaux
            && self.formula == self.orbit
            && self.oracle.is_none_or(|o| o == self.formula)
            && self.stabilized
            && self.limit == self.formula
    }
}

fn check_instance(inst: &Instance, oracles: &[(usize, usize, Option<affmult::char_oracle::TensorDecomposition>)]) -> Result<Checked> {
    let (n, i) = (inst.n, inst.i);
    let xi = xi_from_eta(i, &inst.eta)?;
    let formula = tau_formula(&inst.eta, i)?;
    let tableaux = tau_bruteforce(&inst.eta, i)?;
    let orbit = outer_multiplicity_formula(n, i, &xi)?;
    let oracle = oracles
        .iter()
        .find(|(a, b, _)| (*a, *b) == (n, i))
        .and_then(|(_, _, d)| d.as_ref())
        .filter(|d| inst.eta.eta()[0] <= d.depth)
        .map(|d| d.multiplicity(&xi));
    let probe = outer_multiplicity_limit(n, i, &xi, 0)?;
    let k_max = probe.terms.iter().map(|t| t.threshold).max().unwrap_or(0) + 2;
    let lim = outer_multiplicity_limit(n, i, &xi, k_max)?;
    Ok(Checked { formula, tableaux, orbit, oracle, limit: lim.value, stabilized: lim.stabilized() })
}

fn verify(range: (usize, usize), eta0_max: u32, oracle_depth: u32) -> CliResult<Report> {
    let mut instances = Vec::new();
    for n in range.0..=range.1 {
        for i in 0..=n {
            for e0 in 0..=eta0_max {
                for eta in internal(dominant_characters(n, i, e0))? {
                    instances.push(Instance { n, i, eta });
                }
            }
        }
    }
    let pairs: Vec<(usize, usize)> = (range.0..=range.1).flat_map(|n| (0..=n).map(move |i| (n, i))).collect();
    let oracles = pairs
        .par_iter()
        .map(|&(n, i)| {
            let depth = oracle_depth.min(eta0_max);
            let a = AffineWeight::fundamental(n, 0)?;
            let b = AffineWeight::fundamental(n, i)?;
            Ok((n, i, Some(tensor_outer_multiplicities(&a, &b, depth)?)))
        })
        .collect::<Result<Vec<_>>>();
    let oracles = internal(oracles)?;
    let checked = instances
        .par_iter()
        .map(|inst| check_instance(inst, &oracles))
        .collect::<Result<Vec<_>>>();
    let checked = internal(checked)?;

    let mut rows = Vec::new();
    let mut items = Vec::new();
    let mut first_failure = None;
    for (inst, c) in instances.iter().zip(&checked) {
        let status = if c.pass() { "pass" } else { "FAIL" };
        if !c.pass() && first_failure.is_none() {
            first_failure = Some(format!(
                "n={} i={} eta={}: formula {}, tableaux {}, orbit sum {}, oracle {}, limit {}",
                inst.n,
                inst.i,
                list(inst.eta.eta()),
                c.formula,
                c.tableaux,
                c.orbit,
                c.oracle.map_or("-".into(), |o| o.to_string()),
                c.limit
            ));
        }
        rows.push(vec![
            inst.n.to_string(),
            inst.i.to_string(),
            list(inst.eta.eta()),
            c.formula.to_string(),
            c.tableaux.to_string(),
            c.orbit.to_string(),
            c.oracle.map_or("-".into(), |o| o.to_string()),
            c.limit.to_string(),
            status.to_string(),
        ]);
        items.push(json!({
            "n": inst.n,
            "i": inst.i,
            "eta": inst.eta.eta(),
            "formula": c.formula,
            "tableaux": c.tableaux,
            "orbit": c.orbit,
            "oracle": c.oracle,
            "limit": c.limit,
            "pass": c.pass(),
        }));
    }
    let passed = checked.iter().filter(|c| c.pass()).count();
    let summary = vec![format!("{passed}/{} instances pass", checked.len())];
    let report = Report {
        command: "verify",
        params: json!({
            "n": [range.0, range.1],
            "eta0_max": eta0_max,
            "oracle_depth": oracle_depth,
        }),
        result: json!({ "passed": passed, "total": checked.len(), "instances": items }) as Value,
        formula: "tableaux count = multipartition sum = oracle multiplicity = cofinal limit",
        summary,
        headers: vec!["n", "i", "eta", "formula", "tableaux", "orbit", "oracle", "limit", "status"],
        rows,
    };
    match first_failure {
        Some(msg) => Err(CliError::Mismatch(Box::new(report), msg)),
        None => Ok(report),
    }
}

use std::cmp::Ordering;
use std::path::Path;
use std::sync::Arc;

use racg::center::{classify, verify_central_projection, zeta_partial_norms};
use racg::coxeter::CoxeterSystem;
use racg::free_products::{cross_validate_with_rho, dykema_decompose, free_factor_blocks, FreeFactorSpec};
use racg::groupfile::load_group;
use racg::growth::{growth_series, rational_to_string, rho, Rho};
use racg::hecke::eval_expression;
use racg::rational::{parse_positive_rational, to_f64};
use racg::verify::{run_suite, zeta_symbol_checks};
use racg::{Error, Result};
use serde_json::{json, Value};

use crate::report::{pass_fail, Report, Text};
use crate::{Cli, Command, Mode};

pub fn run(cli: &Cli) -> Result<Report> {
    let load = |path: &Path| -> Result<CoxeterSystem> { Ok(load_group(path)?.with_ball_cap(cli.max_ball)) };
    match &cli.command {
        Command::Info { group } => info(&load(&group.group)?),
        Command::Ball { group, radius } => ball(&load(&group.group)?, *radius),
        Command::Growth { group, terms } => growth(&load(&group.group)?, *terms),
        Command::Rho { group } => rho_cmd(&load(&group.group)?),
        Command::Classify { group, q } => classify_cmd(&load(&group.group)?, q),
        Command::Gamma {
            group,
            radius,
            slack,
            edges,
        } => gamma(&load(&group.group)?, *radius, *slack, *edges),
        Command::ZetaCheck {
            group,
            q,
            radius,
            inner_radius,
        } => zeta_check(&load(&group.group)?, q, *radius, *inner_radius),
        Command::Dykema { ranks, q } => dykema(ranks, q),
        Command::Hecke { group, expr, mode, q } => hecke(load(&group.group)?, expr, *mode, q.as_deref()),
        Command::Verify { seed } => Ok(verify(*seed)),
    }
}

fn info(sys: &CoxeterSystem) -> Result<Report> {
    let pairs: Vec<[&str; 2]> = sys
        .commuting_pairs()
        .into_iter()
        .map(|(s, t)| [sys.name(s), sys.name(t)])
        .collect();
    let components: Vec<Value> = sys
        .components()
        .iter()
        .map(|&c| {
            json!({
                "generators": sys.describe_set(c),
                "rank": c.len(),
                "finite": sys.restrict(c).is_finite(),
            })
        })
        .collect();
    let finiteness = if sys.is_finite() { "finite" } else { "infinite" };
    let mut summary = if sys.is_irreducible() {
        format!("irreducible, {finiteness}, {} generators", sys.rank())
    } else {
        format!(
            "reducible, {finiteness}, {} generators, {} components",
            sys.rank(),
            sys.components().len()
        )
    };
    let exceptional = sys.free_z2_factor_generator().map(|s| {
        summary.push_str(&format!(", exceptional Z2 * Z2^{} shape", sys.rank() - 1));
        sys.name(s).to_string()
    });
    let free_factors: Vec<String> = free_factor_blocks(sys)
        .into_iter()
        .map(|b| sys.describe_set(b))
        .collect();

    let mut t = Text::default();
    t.line("summary", &summary)
        .line("generators", sys.names().join(", "))
        .line(
            "commuting pairs",
            pairs
                .iter()
                .map(|[a, b]| format!("({a}, {b})"))
                .collect::<Vec<_>>()
                .join(", "),
        );
    for c in &components {
        let kind = if c["finite"] == json!(true) {
            "finite"
        } else {
            "infinite"
        };
        t.line(
            "component",
            format!("{} {kind}", c["generators"].as_str().unwrap_or_default()),
        );
    }
    t.line("free factors", free_factors.join(" * "));
    if let Some(s) = &exceptional {
        t.line("free Z2 factor", s);
    }
    Ok(Report::new(
        true,
        t.finish(),
        json!({
            "summary": summary,
            "generators": sys.names(),
            "commuting_pairs": pairs,
            "irreducible": sys.is_irreducible(),
            "finite": sys.is_finite(),
            "components": components,
            "free_factors": free_factors,
            "free_z2_factor": exceptional,
        }),
    ))
}

fn ball(sys: &CoxeterSystem, radius: usize) -> Result<Report> {
    let ball = sys.ball(radius)?;
    let spheres: Vec<Vec<String>> = (0..=radius)
        .map(|k| ball.sphere(k).iter().map(|w| sys.format_element(w)).collect())
        .collect();
    let mut t = Text::default();
    t.line("radius", radius).line("size", ball.len());
    for (k, words) in spheres.iter().enumerate() {
        t.line(&format!("length {k} ({})", words.len()), words.join(" "));
    }
    Ok(Report::new(
        true,
        t.finish(),
        json!({
            "radius": radius,
            "size": ball.len(),
            "sphere_counts": ball.sphere_counts(),
            "spheres": spheres,
        }),
    ))
}

fn growth(sys: &CoxeterSystem, terms: usize) -> Result<Report> {
    let series = growth_series(sys)?;
    let coeffs = series
        .integer_taylor(terms.saturating_sub(1))
        .ok_or_else(|| Error::Internal("growth series has a non-integer coefficient".into()))?;
    let coeffs: Vec<String> = coeffs.iter().map(|c| c.to_string()).collect();
    let mut t = Text::default();
    t.line("W(t)", &series).line("taylor", coeffs.join(", ")).line(
        "checked against sphere counts",
        format!("n < {}", series.checked_terms()),
    );
    Ok(Report::new(
        true,
        t.finish(),
        json!({
            "series": series.to_string(),
            "numerator": series.numerator().to_string(),
            "denominator": series.denominator().to_string(),
            "taylor": coeffs,
            "checked_terms": series.checked_terms(),
        }),
    ))
}

fn rho_json(r: &Rho) -> Value {
    match r {
        Rho::Infinite => json!({ "infinite": true }),
        Rho::Root { square_free, lo, hi } => json!({
            "infinite": false,
            "value": r.value(),
            "inverse": 1.0 / r.value(),
            "bracket": [rational_to_string(lo), rational_to_string(hi)],
            "square_free_denominator": square_free.to_string(),
        }),
    }
}

fn rho_cmd(sys: &CoxeterSystem) -> Result<Report> {
    let r = rho(sys)?;
    let mut t = Text::default();
    t.line("rho", &r);
    if let Rho::Root { square_free, lo, hi } = &r {
        t.line("1/rho", format!("{:.12}", 1.0 / r.value()))
            .line(
                "bracket",
                if lo == hi {
                    format!("exact {}", rational_to_string(lo))
                } else {
                    format!("({}, {}]", rational_to_string(lo), rational_to_string(hi))
                },
            )
            .line("root of", square_free);
    }
    Ok(Report::new(true, t.finish(), json!({ "rho": rho_json(&r) })))
}

fn classify_cmd(sys: &CoxeterSystem, q: &str) -> Result<Report> {
    let q = parse_positive_rational(q)?;
    let report = classify(sys, &q)?;
    let mut t = Text::default();
    t.line("q", &report.q)
        .line("rho", report.rho.map_or("inf".to_string(), |r| format!("{r:.12}")))
        .line("classification", &report.classification)
        .line(
            "center dimension",
            report.center_dimension.map_or("unknown".to_string(), |d| d.to_string()),
        );
    for c in &report.components {
        t.line(&format!("component {}", c.generators), &c.classification);
    }
    let data = serde_json::to_value(&report).expect("report serializes");
    Ok(Report::new(true, t.finish(), data))
}

fn gamma(sys: &CoxeterSystem, radius: usize, slack: usize, edges: bool) -> Result<Report> {
    let report = sys.verify_component_structure(radius, slack)?;
    let mut t = Text::default();
    t.line("radius", radius)
        .line("slack", slack)
        .line("checked vertices", report.checked_vertices)
        .line("components among checked", report.components_among_checked)
        .line("components in ball", report.components_in_ball)
        .line("edges", report.edges)
        .line("exceptional", report.exceptional.join(", "))
        .line("isolated", report.isolated.join(", "))
        .line("result", pass_fail(report.passed));
    let mut data = serde_json::to_value(&report).expect("report serializes");
    if edges {
        let list = sys.build_gamma_ball(radius)?.edge_list(sys);
        t.raw("edge list:");
        for line in list.lines() {
            t.raw(line);
        }
        data["edge_list"] = json!(list.lines().collect::<Vec<_>>());
    }
    Ok(Report::new(report.passed, t.finish(), data))
}

fn zeta_check(sys: &CoxeterSystem, q: &str, radius: usize, inner_radius: usize) -> Result<Report> {
    let q = parse_positive_rational(q)?;
    let norms = zeta_partial_norms(sys, &q, radius)?;
    let symbol = zeta_symbol_checks(sys, radius)?;
    let r = rho(sys)?;
    let mut t = Text::default();
    t.line("q", rational_to_string(&q))
        .line("rho", &r)
        .line(
            "symbol identities",
            format!("{} ({} checks, exact)", pass_fail(symbol.passed()), symbol.checked),
        )
        .line(
            "partial norm squared",
            format!("{:.12}", to_f64(norms.last().expect("radius + 1 partial sums"))),
        );
    let mut data = json!({
        "q": rational_to_string(&q),
        "rho": rho_json(&r),
        "symbol_checks": symbol.checked,
        "symbol_failures": symbol.failures,
        "partial_norms_sq": norms.iter().map(to_f64).collect::<Vec<_>>(),
    });
    let mut passed = symbol.passed();
    if r.compare(&q) == Ordering::Less {
        let proj = verify_central_projection(sys, &q, radius, inner_radius)?;
        t.line("W(q)", format!("{:.12}", proj.growth_at_q))
            .line("tail bound", format!("{:.3e}", proj.tail_bound))
            .line("|P^2 - P|", format!("{:.3e}", proj.idempotence_residual))
            .line("max_s |[T_s, P]|", format!("{:.3e}", proj.commutator_residual))
            .line("eigenvalue residual", format!("{:.3e}", proj.eigenvalue_residual))
            .line("symmetry residual", format!("{:.3e}", proj.symmetry_residual))
            .line(
                "exact eigen-relation",
                format!(
                    "{} violations in {} checks",
                    proj.eigen_violations.len(),
                    proj.eigen_checks
                ),
            )
            .line("projection", pass_fail(proj.passed()));
        passed &= proj.passed();
        data["projection"] = serde_json::to_value(&proj).expect("report serializes");
    } else {
        t.line("projection", "not applicable: q ≥ rho, zeta is not square-summable");
        data["projection"] = Value::Null;
    }
    t.line("result", pass_fail(passed));
    Ok(Report::new(passed, t.finish(), data))
}

fn dykema(ranks: &str, q: &str) -> Result<Report> {
    let spec = FreeFactorSpec::parse(ranks)?;
    let q = parse_positive_rational(q)?;
    let cross = cross_validate_with_rho(&spec, &q)?;
    let mut t = Text::default();
    t.line("ranks", format!("{:?}", spec.ranks()))
        .line("q", rational_to_string(&q))
        .line("rho", format!("{:.12}", cross.rho))
        .line("closed-form condition", cross.closed_form)
        .line("classification", &cross.classification);
    let mut data = json!({ "cross_validation": serde_json::to_value(&cross).expect("report serializes") });
    match dykema_decompose(&spec, &q) {
        Ok(d) => {
            t.line("fold order", format!("{:?}", d.fold_order))
                .line("atoms per step", format!("{:?}", d.atoms_per_step))
                .line(
                    "diffuse part",
                    if d.diffuse_part {
                        d.diffuse_label.as_str()
                    } else {
                        "absent"
                    },
                );
            for a in &d.atoms.atoms {
                t.line(
                    "atom",
                    format!("({}) mass {}", a.label.join(", "), rational_to_string(&a.mass)),
                );
            }
            data["decomposition"] = serde_json::to_value(&d).expect("report serializes");
        }
        Err(Error::Precondition(reason)) => {
            t.line("decomposition", format!("not applicable: {reason}"));
            data["decomposition"] = Value::Null;
        }
        Err(e) => return Err(e),
    }
    t.line("agreement", pass_fail(cross.agree));
    Ok(Report::new(cross.agree, t.finish(), data))
}

fn hecke(sys: CoxeterSystem, expr: &str, mode: Mode, q: Option<&str>) -> Result<Report> {
    let sys = Arc::new(sys);
    let value = eval_expression(&sys, expr)?;
    let exact = value.to_text();
    let mut t = Text::default();
    t.line("expression", expr).line("value", &exact);
    let mut data = json!({ "expression": expr, "value": exact });
    match (mode, q) {
        (Mode::Float, None) => return Err(Error::input("float mode requires --q")),
        (_, Some(q)) => {
            let q = to_f64(&parse_positive_rational(q)?);
            let numeric = value.specialize(q).to_text();
            t.line(&format!("value at q = {q}"), &numeric);
            data["q"] = json!(q);
            data["numeric"] = json!(numeric);
        }
        (Mode::Exact, None) => {}
    }
    Ok(Report::new(true, t.finish(), data))
}

fn verify(seed: u64) -> Report {
    let report = run_suite(seed);
    let mut t = Text::default();
    t.line("seed", seed);
    for row in &report.rows {
        t.raw(format!(
            "{}  {:<14} {} ({} checks)",
            pass_fail(row.passed),
            row.module,
            row.property,
            row.checked
        ));
        for e in &row.examples {
            t.raw(format!("      {e}"));
        }
    }
    let failed = report.rows.iter().filter(|r| !r.passed).count();
    t.line(
        "summary",
        format!("{} passed, {failed} failed", report.rows.len() - failed),
    );
    let data = serde_json::to_value(&report).expect("report serializes");
    Report::new(report.passed(), t.finish(), data)
}

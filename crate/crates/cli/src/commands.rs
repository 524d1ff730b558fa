use std::collections::BTreeMap;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use jetlink_core::algebra::rational::{self, int, Rational};
use jetlink_core::algebra::{OrderKind, Polynomial, RingMorphism};
use jetlink_core::charclass::{jet_euler, jet_euler_projective_roots, jet_euler_quadric_quotient};
use jetlink_core::division::{check_surjectivity, generic_rank_check, scan_bundles};
use jetlink_core::error::Error;
use jetlink_core::orbitmap::{divisor_transfer_check, orbit_class, orbit_classes, so_quadric_divisor, GroupClass};
use jetlink_core::spaces::{
    even_quadric, grassmannian, odd_quadric, params, projective_space, so_projective, validate_presentation, Params, Registry,
    SpacePresentation,
};
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::{BundleArgs, Cli, Command, ComputeArgs, DivisorArgs, ExportArgs, Format, GenericArgs, Order, SpaceArgs};
use crate::render;
use crate::report::ReportDocument;

fn order_kind(o: Order) -> OrderKind {
    match o {
        Order::Grevlex => OrderKind::Grevlex,
        Order::Lex => OrderKind::Lex,
    }
}

fn order_name(o: Order) -> &'static str {
    order_kind(o).name()
}

fn required(v: Option<u32>, flag: &str, space: &str) -> Result<u32> {
    v.ok_or_else(|| anyhow!("--{flag} is required for --space {space}"))
}

pub fn resolve_space(sel: &SpaceArgs, order: Order) -> Result<SpacePresentation> {
    let s = if let Some(path) = &sel.config {
        let mut reg = Registry::new();
        let s = reg.load(path).with_context(|| format!("loading {}", path.display()))?;
        (*s).clone()
    } else {
        let id = sel.space.as_deref().ok_or_else(|| anyhow!("either --space or --config is required"))?;
        match id {
            "pn" => projective_space(required(sel.n, "n", id)?)?,
            "odd-quadric" => odd_quadric(required(sel.n, "n", id)?)?,
            "even-quadric" => even_quadric(required(sel.n, "n", id)?)?,
            "gr" => grassmannian(required(sel.k, "k", id)?, required(sel.n, "n", id)?)?,
            "so-pn" => so_projective(required(sel.n, "n", id)?)?,
            other => bail!("unknown space {other:?}; see `jetlink spaces`"),
        }
    };
    let kind = order_kind(order);
    Ok(if s.order() == kind { s } else { s.with_order(kind)? })
}

/// `3`, `2..6` (inclusive) or `2,3,5`.
pub fn parse_values(text: &str) -> Result<Vec<i64>> {
    let t = text.trim();
    if let Some((a, b)) = t.split_once("..") {
        let a: i64 = a.trim().parse().with_context(|| format!("bad range start in {t:?}"))?;
        let b: i64 = b.trim().trim_start_matches('=').parse().with_context(|| format!("bad range end in {t:?}"))?;
        return Ok((a..=b).collect());
    }
    t.split(',').map(|v| v.trim().parse::<i64>().with_context(|| format!("bad integer {v:?}"))).collect()
}

fn grid(args: &BundleArgs) -> Result<BTreeMap<String, Vec<i64>>> {
    let mut g = BTreeMap::new();
    if let Some(d) = &args.d {
        g.insert("d".to_string(), parse_values(d)?);
    }
    for p in &args.params {
        let (k, v) = p.split_once('=').ok_or_else(|| anyhow!("--param expects name=value, got {p:?}"))?;
        g.insert(k.trim().to_string(), parse_values(v)?);
    }
    Ok(g)
}

fn single_point(args: &BundleArgs) -> Result<Params> {
    let mut out = Params::new();
    for (k, v) in grid(args)? {
        match v.as_slice() {
            [x] => {
                out.insert(k, *x);
            }
            _ => bail!("parameter {k} needs a single value here"),
        }
    }
    Ok(out)
}

fn fill_space(doc: &mut ReportDocument, s: &SpacePresentation) {
    doc.space = Some(s.id.clone());
    doc.space_hash = Some(s.content_hash());
}

fn request<T: Serialize>(r: &T) -> Value {
    serde_json::to_value(r).unwrap_or(Value::Null)
}

fn class_json(v: &GroupClass) -> Value {
    json!({ "value": v, "display": v.to_string(), "latex": v.to_latex() })
}

fn merge(mut a: Value, b: Value) -> Value {
    if let (Some(a), Value::Object(b)) = (a.as_object_mut(), b) {
        a.extend(b);
    }
    a
}

fn compute(args: &ComputeArgs, order: Order) -> Result<ReportDocument> {
    let mut doc = ReportDocument::new("compute", request(args), order_name(order));
    let s = resolve_space(&args.bundle.space, order)?;
    fill_space(&mut doc, &s);
    let bundle = s.require_bundle(&args.bundle.bundle)?;
    let p = single_point(&args.bundle)?;
    if args.cycle == "all" {
        let cycles: Vec<_> = s.cycles.iter().collect();
        for (c, r) in cycles.iter().zip(orbit_classes(&s, bundle, &p, &cycles)?) {
            let base = json!({ "cycle": c.name, "dim": c.complex_dim });
            match r {
                Ok(r) => {
                    let h = rational::format(&r.hypothesis_chern_number);
                    doc.results.push(merge(
                        merge(base, json!({ "status": "ok", "hypothesis_chern_number": h, "discriminant_degree": h })),
                        class_json(&r.value),
                    ));
                }
                Err(e @ Error::HypothesisViolated { .. }) => {
                    doc.diagnostics.push(e.to_string());
                    doc.results.push(merge(
                        base,
                        json!({ "status": "hypothesis-violated", "hypothesis_chern_number": "0", "discriminant_degree": "0", "value": null }),
                    ));
                }
                Err(e) => return Err(e.into()),
            }
        }
    } else {
        let c = s.require_cycle(&args.cycle)?;
        let r = orbit_class(&s, bundle, &p, c)?;
        let h = rational::format(&r.hypothesis_chern_number);
        doc.results.push(merge(
            json!({ "cycle": c.name, "dim": c.complex_dim, "status": "ok", "hypothesis_chern_number": h, "discriminant_degree": h }),
            class_json(&r.value),
        ));
    }
    Ok(doc)
}

fn check(args: &BundleArgs, order: Order) -> Result<ReportDocument> {
    let mut doc = ReportDocument::new("check", request(args), order_name(order));
    let s = resolve_space(&args.space, order)?;
    fill_space(&mut doc, &s);
    let bundle = s.require_bundle(&args.bundle)?;
    let p = single_point(args)?;
    let v = check_surjectivity(&s, bundle, &p)?;
    doc.diagnostics.extend(v.skipped.iter().map(|k| format!("skipped {}: {}", k.cycle, k.reason)));
    doc.results.push(serde_json::to_value(&v)?);
    Ok(doc)
}

fn scan(args: &BundleArgs, order: Order) -> Result<ReportDocument> {
    let mut doc = ReportDocument::new("scan", request(args), order_name(order));
    let s = resolve_space(&args.space, order)?;
    fill_space(&mut doc, &s);
    let bundle = s.require_bundle(&args.bundle)?;
    let r = scan_bundles(&s, bundle, &grid(args)?)?;
    doc.results.push(serde_json::to_value(&r)?);
    Ok(doc)
}

fn grid_points(g: &BTreeMap<String, Vec<i64>>) -> Vec<Params> {
    let mut points = vec![Params::new()];
    for (k, vs) in g {
        points = points
            .iter()
            .flat_map(|p| {
                vs.iter().map(move |v| {
                    let mut q = p.clone();
                    q.insert(k.clone(), *v);
                    q
                })
            })
            .collect();
    }
    points
}

fn generic(args: &GenericArgs, order: Order) -> Result<ReportDocument> {
    let mut doc = ReportDocument::new("generic-check", request(args), order_name(order));
    let s = resolve_space(&args.bundle.space, order)?;
    fill_space(&mut doc, &s);
    let sample: Vec<Polynomial> = if args.sample.is_empty() {
        let bundle = s.require_bundle(&args.bundle.bundle)?;
        let g = grid(&args.bundle)?;
        if g.is_empty() {
            bail!("give --sample points or a parameter grid");
        }
        grid_points(&g).iter().map(|p| bundle.c1(&s.borel, p)).collect::<jetlink_core::Result<_>>()?
    } else {
        args.sample.iter().map(|t| s.borel.parse(t)).collect::<jetlink_core::Result<_>>()?
    };
    let r = generic_rank_check(&s, &sample)?;
    doc.results.push(serde_json::to_value(&r)?);
    Ok(doc)
}

fn divisor_setup(n: u32, order: Order) -> Result<(SpacePresentation, SpacePresentation, RingMorphism)> {
    let (x, y, rho) = so_quadric_divisor(n)?;
    let kind = order_kind(order);
    if kind == x.order() {
        return Ok((x, y, rho));
    }
    let (x, y) = (x.with_order(kind)?, y.with_order(kind)?);
    let rho = RingMorphism::new(x.borel.clone(), y.borel.clone(), rho.images().to_vec())?;
    Ok((x, y, rho))
}

fn divisor(args: &DivisorArgs, order: Order) -> Result<ReportDocument> {
    let mut doc = ReportDocument::new("divisor-check", request(args), order_name(order));
    let (x, y, rho) = divisor_setup(args.n, order)?;
    fill_space(&mut doc, &x);
    doc.diagnostics.push(format!("divisor {} with hash {}", y.id, y.content_hash()));
    let r: Rational = match &args.r {
        Some(t) => rational::parse(t).ok_or_else(|| anyhow!("bad rational {t:?}"))?,
        None => int(2) / int(args.d),
    };
    let bundle = x.require_bundle("O")?;
    let p = params(&[("d", args.d)]);
    let cycles: Vec<_> = if args.cycle == "all" {
        x.cycles.iter().filter(|c| c.complex_dim > 0).collect()
    } else {
        vec![x.require_cycle(&args.cycle)?]
    };
    for z in cycles {
        match divisor_transfer_check(&x, &y, bundle, &p, z, &r, &rho) {
            Ok(rec) => doc.results.push(merge(
                serde_json::to_value(&rec)?,
                json!({ "lhs_display": rec.lhs.to_string(), "rhs_display": rec.rhs.to_string() }),
            )),
            Err(e @ Error::HypothesisViolated { .. }) if args.cycle == "all" => {
                doc.diagnostics.push(format!("{}: {e}", z.name));
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok(doc)
}

fn spaces(configs: &[std::path::PathBuf]) -> Result<ReportDocument> {
    let mut doc = ReportDocument::new("spaces", json!({ "config": configs }), "grevlex");
    let mut reg = Registry::new();
    for c in configs {
        reg.load(c).with_context(|| format!("loading {}", c.display()))?;
    }
    for e in reg.listing() {
        doc.results.push(serde_json::to_value(&e)?);
    }
    Ok(doc)
}

struct Probe {
    name: &'static str,
    run: fn() -> Result<bool>,
}

fn value_of(s: &SpacePresentation, d: i64, cycle: &str) -> Result<String> {
    let r = orbit_class(s, s.require_bundle("O")?, &params(&[("d", d)]), s.require_cycle(cycle)?)?;
    Ok(r.value.to_string())
}

fn probes() -> Vec<Probe> {
    vec![
        Probe {
            name: "P2 O(3): P1 -> -6 g(c2), P0 -> -9 g(c3)",
            run: || {
                let s = projective_space(2)?;
                Ok(value_of(&s, 3, "P1")? == "-6*g(c2)" && value_of(&s, 3, "P0")? == "-9*g(c3)" && value_of(&s, 3, "P2")? == "0")
            },
        },
        Probe { name: "P1 O(3): P0 -> -3 g(c2)", run: || Ok(value_of(&projective_space(1)?, 3, "P0")? == "-3*g(c2)") },
        Probe { name: "odd quadric n=1 O(3): Z_1 -> 0", run: || Ok(value_of(&odd_quadric(1)?, 3, "Z_1")? == "0") },
        Probe {
            name: "P2: O(2) not surjective, O(3) surjective",
            run: || {
                let s = projective_space(2)?;
                let b = s.require_bundle("O")?;
                Ok(!check_surjectivity(&s, b, &params(&[("d", 2)]))?.surjective && check_surjectivity(&s, b, &params(&[("d", 3)]))?.surjective)
            },
        },
        Probe {
            name: "jet Euler class: F_X route equals root and quotient routes",
            run: || {
                let p = projective_space(3)?;
                let q = even_quadric(2)?;
                let e = |s: &SpacePresentation| jet_euler(s, s.require_bundle("O").unwrap(), &params(&[("d", 4)])).map(|j| j.value);
                Ok(e(&p)? == jet_euler_projective_roots(&p, 4)? && e(&q)? == jet_euler_quadric_quotient(&q, 4)?)
            },
        },
        Probe {
            name: "divisor transfer on P3 and its quadric, O(3)",
            run: || {
                let (x, y, rho) = so_quadric_divisor(2)?;
                let b = x.require_bundle("O")?;
                let rec = divisor_transfer_check(&x, &y, b, &params(&[("d", 3)]), x.require_cycle("P2")?, &(int(2) / int(3)), &rho)?;
                Ok(rec.equal)
            },
        },
        Probe {
            name: "built-in presentations validate",
            run: || {
                let all = [projective_space(3)?, odd_quadric(2)?, even_quadric(3)?, grassmannian(2, 4)?, so_projective(3)?];
                Ok(all.iter().all(|s| validate_presentation(s).is_empty()))
            },
        },
    ]
}

fn selftest() -> Result<(ReportDocument, bool)> {
    let mut doc = ReportDocument::new("selftest", Value::Null, "grevlex");
    let mut all = true;
    for p in probes() {
        let (ok, detail) = match (p.run)() {
            Ok(ok) => (ok, None),
            Err(e) => (false, Some(format!("{e:#}"))),
        };
        all &= ok;
        doc.results.push(json!({ "check": p.name, "passed": ok, "error": detail }));
    }
    Ok((doc, all))
}

fn export(args: &ExportArgs, cli: &Cli) -> Result<String> {
    let doc: Value = match &args.input {
        Some(path) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            serde_json::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?
        }
        None => serde_json::to_value(compute(&args.compute, cli.order)?)?,
    };
    render::render(&doc, cli.format)
}

fn emit(mut doc: ReportDocument, start: Instant, format: Format) -> Result<()> {
    doc.timing_ms = start.elapsed().as_millis() as u64;
    println!("{}", render::render(&serde_json::to_value(&doc)?, format)?.trim_end());
    Ok(())
}

pub fn run(cli: &Cli) -> Result<u8> {
    let start = Instant::now();
    let doc = match &cli.command {
        Command::Spaces { config } => spaces(config)?,
        Command::Compute(a) => compute(a, cli.order)?,
        Command::Check(a) => check(a, cli.order)?,
        Command::Scan(a) => scan(a, cli.order)?,
        Command::GenericCheck(a) => generic(a, cli.order)?,
        Command::DivisorCheck(a) => divisor(a, cli.order)?,
        Command::Export(a) => {
            let out = export(a, cli)?;
            print!("{out}");
            if !out.ends_with('\n') {
                println!();
            }
            return Ok(0);
        }
        Command::Selftest => {
            let (doc, ok) = selftest()?;
            emit(doc, start, cli.format)?;
            return Ok(if ok { 0 } else { 1 });
        }
    };
    emit(doc, start, cli.format)?;
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn value_syntax() {
        assert_eq!(parse_values("3").unwrap(), vec![3]);
        assert_eq!(parse_values("2..5").unwrap(), vec![2, 3, 4, 5]);
        assert_eq!(parse_values("2,4").unwrap(), vec![2, 4]);
        assert!(parse_values("x").is_err());
    }

    #[test]
    fn selftest_passes() {
        let (doc, ok) = selftest().unwrap();
        assert!(ok, "{:?}", doc.results);
    }
}

use std::fmt::Write;

use anyhow::Result;
use hyperquot::hyperspace::{indexed_closed_family, vietoris_topologies};
use hyperquot::io::TopologyJson;
use hyperquot::metric::HausdorffVariant;
use hyperquot::verifier::{Report, Status};
use hyperquot::{FiniteSpace, FunctionFamily, Mask, Topology};
use serde_json::{json, Value};

use crate::Format;

fn json_text(v: &impl serde::Serialize) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn indices(m: &Mask) -> String {
    m.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn topologies(tops: &[Topology], format: Format) -> Result<String> {
    let mut out = String::new();
    match format {
        Format::Json => {
            let records: Vec<Value> = tops
                .iter()
                .enumerate()
                .map(|(id, t)| {
                    let s = t.separation();
                    let tj = TopologyJson::from(t);
                    json!({"id": id, "size": tj.size, "min_nbhd": tj.min_nbhd, "opens": tj.opens,
                           "t0": s.t0, "t1": s.t1, "t2": s.t2})
                })
                .collect();
            out = json_text(&records)?;
        }
        Format::Csv => {
            out.push_str("id,size,min_nbhd,t0,t1,t2\n");
            for (id, t) in tops.iter().enumerate() {
                let s = t.separation();
                let nb: Vec<String> = t.neighborhoods().iter().map(indices).collect();
                writeln!(out, "{id},{},{},{},{},{}", t.size(), nb.join("|"), s.t0, s.t1, s.t2)?;
            }
        }
        Format::Pretty => {
            for (id, t) in tops.iter().enumerate() {
                let s = t.separation();
                let nb: Vec<String> = t.neighborhoods().iter().map(|m| format!("{m:?}")).collect();
                let flags: Vec<&str> = [("T0", s.t0), ("T1", s.t1), ("T2", s.t2)]
                    .iter()
                    .filter(|(_, on)| *on)
                    .map(|(n, _)| *n)
                    .collect();
                writeln!(out, "#{id:<4} U = {}  {}", nb.join(" "), flags.join(" "))?;
            }
        }
    }
    Ok(out)
}

pub fn summary_line(report: &Report) -> String {
    Status::ALL
        .iter()
        .map(|&s| format!("{}={}", s, report.summary.count(s)))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn report(report: &Report, format: Format) -> Result<String> {
    let mut out = String::new();
    match format {
        Format::Json => out = json_text(report)?,
        Format::Csv => {
            out.push_str("check,x_size,x_topology_id,y_size,param,status,ms\n");
            for r in &report.results {
                let i = &r.instance;
                let id = i.x_topology_id.map(|v| v.to_string()).unwrap_or_default();
                let param = i.param.clone().unwrap_or_default().replace(',', ";");
                writeln!(out, "{},{},{id},{},{param},{},{}", r.check, i.x_size, i.y_size, r.status, r.ms)?;
            }
        }
        Format::Pretty => {
            let mut rows: Vec<(String, Status, usize)> = Vec::new();
            for r in &report.results {
                match rows.iter_mut().find(|(c, s, _)| *c == r.check.name() && *s == r.status) {
                    Some(row) => row.2 += 1,
                    None => rows.push((r.check.to_string(), r.status, 1)),
                }
            }
            rows.sort_by(|a, b| (a.0.as_str(), a.1).cmp(&(b.0.as_str(), b.1)));
            for (c, s, n) in rows {
                writeln!(out, "{c:<28} {:<25} {n}", s.name())?;
            }
            for r in report.with_status(Status::Counterexample) {
                let i = &r.instance;
                write!(out, "counterexample: {} |X|={} id={:?} |Y|={}", r.check, i.x_size, i.x_topology_id, i.y_size)?;
                if let Some(p) = &i.param {
                    write!(out, " {p}")?;
                }
                out.push('\n');
            }
            writeln!(out, "{}", summary_line(report))?;
        }
    }
    Ok(out)
}

pub fn hausdorff(values: &[f64; 4], agree: bool, format: Format) -> Result<String> {
    let mut out = String::new();
    let named = HausdorffVariant::ALL.iter().zip(values);
    match format {
        Format::Json => {
            let variants: serde_json::Map<String, Value> = named.map(|(v, x)| (v.name().to_string(), json!(x))).collect();
            out = json_text(&json!({"d_h": values[0], "variants": variants, "agree": agree}))?;
        }
        Format::Csv => {
            out.push_str("variant,value\n");
            for (v, x) in named {
                writeln!(out, "{},{x}", v.name())?;
            }
        }
        Format::Pretty => {
            for (v, x) in named {
                writeln!(out, "{:<11} {x}", v.name())?;
            }
            writeln!(out, "d_H = {}{}", values[0], if agree { "" } else { "  (variants disagree)" })?;
        }
    }
    Ok(out)
}

fn describe_all(space: &FiniteSpace, sets: &[Mask]) -> Vec<String> {
    sets.iter().map(|&m| space.describe(m)).collect()
}

fn topology_value(t: &Topology) -> Value {
    serde_json::to_value(TopologyJson::from(t)).expect("topology export is plain data")
}

/// Neighbourhoods, then open sets when materialized; carrier points are
/// printed as the sets they stand for.
fn topology_text(out: &mut String, name: &str, t: &Topology, points: &[String]) -> Result<()> {
    let set = |m: Mask| -> String {
        let parts: Vec<&str> = m.iter().map(|i| points[i].as_str()).collect();
        format!("{{{}}}", parts.join(", "))
    };
    writeln!(out, "{name}")?;
    for (i, &u) in t.neighborhoods().iter().enumerate() {
        writeln!(out, "  U({}) = {}", points[i], set(u))?;
    }
    match t.opens() {
        Some(opens) => {
            let os: Vec<String> = opens.into_iter().map(set).collect();
            writeln!(out, "  opens: {}", os.join(" "))?;
        }
        None => writeln!(out, "  opens: not listed above {} points", hyperquot::topology::MAX_EXPLICIT)?,
    }
    Ok(())
}

fn carrier_text(space: &FiniteSpace, carrier: &[Mask], format: Format) -> Result<String> {
    let names = describe_all(space, carrier);
    Ok(match format {
        Format::Json => json_text(&json!({"carrier": carrier.iter().map(|m| m.to_indices()).collect::<Vec<_>>(), "labels": names}))?,
        Format::Csv => {
            let mut out = "index,set\n".to_string();
            for (i, n) in names.iter().enumerate() {
                writeln!(out, "{i},\"{n}\"")?;
            }
            out
        }
        Format::Pretty => {
            let mut out = String::new();
            for (i, n) in names.iter().enumerate() {
                writeln!(out, "{i:>3}  {n}")?;
            }
            out
        }
    })
}

pub fn carrier(space: &FiniteSpace, y_size: usize, format: Format) -> Result<String> {
    carrier_text(space, &indexed_closed_family(space, y_size)?, format)
}

fn topologies_named(space: &FiniteSpace, points: &[Mask], named: &[(&str, Topology)], format: Format) -> Result<String> {
    let names = describe_all(space, points);
    Ok(match format {
        Format::Json => {
            let mut obj = serde_json::Map::new();
            obj.insert("carrier".into(), json!(points.iter().map(|m| m.to_indices()).collect::<Vec<_>>()));
            for (n, t) in named {
                obj.insert(n.to_string(), topology_value(t));
            }
            json_text(&obj)?
        }
        Format::Csv => {
            let mut out = "topology,point,min_nbhd\n".to_string();
            for (n, t) in named {
                for (i, u) in t.neighborhoods().iter().enumerate() {
                    writeln!(out, "{n},\"{}\",{}", names[i], indices(u))?;
                }
            }
            out
        }
        Format::Pretty => {
            let mut out = String::new();
            for (n, t) in named {
                topology_text(&mut out, n, t, &names)?;
            }
            out
        }
    })
}

pub fn vietoris(space: &FiniteSpace, y_size: usize, format: Format) -> Result<String> {
    let carrier = indexed_closed_family(space, y_size)?;
    let v = vietoris_topologies(space, &carrier)?;
    topologies_named(space, &carrier, &[("vietoris", v.full), ("upper", v.upper), ("lower", v.lower)], format)
}

pub fn quotients(space: &FiniteSpace, y_size: usize, format: Format) -> Result<String> {
    let fam = FunctionFamily::all(space.clone(), y_size)?;
    let t = fam.topologies()?;
    topologies_named(
        space,
        &fam.image_sets(),
        &[
            ("product_quotient", t.product_quotient),
            ("symmetric_quotient", t.symmetric_quotient),
            ("product_symmetric_quotient", t.product_symmetric_quotient),
            ("vietoris", t.vietoris),
        ],
        format,
    )
}

//! Certificates as `key: value` lines or single-line JSON.

use serde_json::{Map, Value};

use crate::blockip::{ConstantsTable, KernelPoint, ProximityReport, Reduction, SolveOutcome};
use crate::colorful::{ColorfulCertificate, SubsetSelection};
use crate::exact::{fmt_rat, Rat, RatVec};
use crate::steinitz::RearrangementCertificate;

/// Ordered list of named fields.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub kind: String,
    pub fields: Vec<(String, String)>,
}

impl Report {
    pub fn new(kind: &str) -> Self {
        Report { kind: kind.to_string(), fields: Vec::new() }
    }

    pub fn field(mut self, key: &str, value: impl ToString) -> Self {
        self.fields.push((key.to_string(), value.to_string()));
        self
    }

    pub fn rat(self, key: &str, v: &Rat) -> Self {
        self.field(key, fmt_rat(v))
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("kind: {}\n", self.kind);
        for (k, v) in &self.fields {
            out.push_str(&format!("{}: {}\n", k, v));
        }
        out
    }

    /// One JSON object on one line; values stay strings so rationals are exact.
    pub fn to_json(&self) -> String {
        let mut m = Map::new();
        m.insert("kind".into(), Value::String(self.kind.clone()));
        for (k, v) in &self.fields {
            m.insert(k.clone(), Value::String(v.clone()));
        }
        Value::Object(m).to_string()
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            format!("{}\n", self.to_json())
        } else {
            self.to_text()
        }
    }
}

/// 1-based images, space separated.
pub fn fmt_perm(p: &[usize]) -> String {
    p.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(" ")
}

pub fn rearrangement(cert: &RearrangementCertificate) -> Report {
    Report::new("rearrangement")
        .field("permutation", fmt_perm(&cert.permutation))
        .field("dimension", cert.dimension)
        .rat("radius", &cert.radius)
        .rat("certified_bound", &cert.certified_bound)
        .rat("achieved_max", &cert.achieved_max)
        .field("backtracks", cert.backtracks)
}

pub fn colorful(cert: &ColorfulCertificate) -> Report {
    let mut r = Report::new("colorful");
    for (j, p) in cert.permutations.iter().enumerate() {
        r = r.field(&format!("permutation_{}", j + 1), fmt_perm(p));
    }
    r = r
        .field("route", cert.route.name())
        .rat("certified_bound", &cert.certified_bound)
        .rat("achieved_max", &cert.achieved_max);
    if let Some(b) = &cert.phase1_row_bound {
        r = r.rat("phase1_row_bound", b);
    }
    if let Some(d) = &cert.drift {
        r = r.field("drift", d);
    }
    if let Some(s) = &cert.soft_bound {
        r = r.rat("soft_bound", s).field("soft_bound_met", cert.soft_bound_met().unwrap_or(false));
    }
    r
}

pub fn selection(sel: &SubsetSelection) -> Report {
    let mut r = Report::new("singlesum").field("k", sel.k);
    for (j, set) in sel.sets.iter().enumerate() {
        r = r.field(&format!("set_{}", j + 1), fmt_perm(set));
    }
    r.rat("achieved", &sel.achieved).field("fractional", sel.fractional)
}

fn constants(mut r: Report, c: &ConstantsTable) -> Report {
    for (k, v) in c.rows() {
        r = r.field(k, v);
    }
    r
}

fn point(p: &KernelPoint) -> String {
    p.concat().to_string()
}

pub fn reduction(red: &Reduction) -> Report {
    let b = &red.bundle;
    let mut r = Report::new("reduction");
    r = match &red.point {
        Some(p) => r.field("result", point(p)),
        None => r.field("result", "none"),
    };
    if let Some((k, k2)) = red.collision {
        r = r.field("collision", format!("{} {}", k, k2));
    }
    r = r
        .field("alpha0", b.u_seq.len())
        .field("alphas", b.alphas.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(" "))
        .field("rays", b.rays.len())
        .rat("prefix_max", &red.prefix_max)
        .rat("offset_max", &red.offset_max)
        .field("distinct_offsets", red.distinct_offsets)
        .field("remainder_image_integral", b.remainder_image_integral)
        .field("remainder_tight", b.remainder_tight)
        .field("order_tight", b.order_tight);
    constants(r, &red.constants)
}

pub fn solve(out: &SolveOutcome, radius: &Rat) -> Report {
    let r = Report::new("solve").rat("radius", radius);
    match out {
        SolveOutcome::Optimal { x, y, value } => {
            r.field("status", "optimal").field("x", x).field("y", y).rat("value", value)
        }
        SolveOutcome::Infeasible => r.field("status", "infeasible"),
        SolveOutcome::LpUnbounded => r.field("status", "lp-unbounded"),
        SolveOutcome::NoIntegerInRadius => r.field("status", "no-integer-in-radius"),
    }
}

pub fn proximity(rep: &ProximityReport) -> Report {
    let mut r = Report::new("proximity")
        .field("lp_vertex", &rep.lp_vertex)
        .rat("lp_value", &rep.lp_value)
        .field("optimal_count", rep.optimal.len());
    r = match (&rep.ip_value, &rep.distance) {
        (Some(v), Some(d)) => r.rat("ip_value", v).rat("distance_inf", d),
        _ => r.field("ip_value", "infeasible"),
    };
    r.rat("xi", &rep.xi)
}

pub fn graver(elements: &[RatVec]) -> Report {
    let mut r = Report::new("graver").field("count", elements.len());
    for (i, g) in elements.iter().enumerate() {
        r = r.field(&format!("g{}", i + 1), g);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::frac;

    #[test]
    fn text_and_json() {
        let r = Report::new("demo").rat("x", &frac(-3, 4)).field("perm", fmt_perm(&[2, 0, 1]));
        assert_eq!(r.to_text(), "kind: demo\nx: -3/4\nperm: 3 1 2\n");
        let v: Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["x"], "-3/4");
        assert_eq!(r.get("perm"), Some("3 1 2"));
    }
}

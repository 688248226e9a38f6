use std::fmt::Write;

use serde::Serialize;

use crate::actual::{Actualization, Segment, SpanningPath};
use crate::template::TriangleTemplate;

#[derive(Debug, Clone, Serialize)]
pub struct SegmentReport {
    pub from: String,
    pub to: String,
    pub label: String,
    pub length: usize,
    pub bound_expr: String,
    pub bound: u64,
    pub exact: bool,
    pub slack: i64,
}

impl From<&Segment> for SegmentReport {
    fn from(s: &Segment) -> Self {
        Self {
            from: s.from.name(),
            to: s.to.name(),
            label: s.label.to_string(),
            length: s.len(),
            bound_expr: s.bound.to_string(),
            bound: s.bound_value.value,
            exact: s.bound_value.exact,
            slack: s.slack(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SpanningReport {
    pub segments: Vec<SegmentReport>,
    pub length: usize,
    pub bound6: u64,
}

impl SpanningReport {
    pub fn new(p: &SpanningPath) -> Self {
        Self {
            segments: p.segments.iter().map(SegmentReport::from).collect(),
            length: p.len(),
            bound6: p.bound6.value,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RegionReport {
    pub label: String,
    pub cycle: Vec<String>,
    pub edge_perimeter: usize,
    pub perimeter: usize,
    pub limit: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct VertexReport {
    pub name: String,
    pub size: usize,
}

/// Per-vertex sizes, per-segment slack and per-region perimeters.
#[derive(Debug, Clone, Serialize)]
pub struct ActualizationReport {
    pub d: u64,
    pub exact: bool,
    pub vertices: Vec<VertexReport>,
    pub segments: Vec<SegmentReport>,
    pub regions: Vec<RegionReport>,
    pub min_slack: i64,
    pub total_slack: i64,
    pub max_segment: usize,
    pub max_perimeter: usize,
}

impl ActualizationReport {
    pub fn new(act: &Actualization, tpl: &TriangleTemplate) -> Self {
        let segments: Vec<SegmentReport> = act.segments.iter().map(SegmentReport::from).collect();
        Self {
            d: act.d.value,
            exact: act.d.exact,
            vertices: (0..tpl.specs.len())
                .map(|i| {
                    let v = crate::VertexId(i);
                    VertexReport {
                        name: v.name(),
                        size: act.value(v).size(),
                    }
                })
                .collect(),
            min_slack: segments.iter().map(|s| s.slack).min().unwrap_or(0),
            total_slack: segments.iter().map(|s| s.slack).sum(),
            max_segment: segments.iter().map(|s| s.length).max().unwrap_or(0),
            max_perimeter: act.regions.iter().map(|r| r.perimeter()).max().unwrap_or(0),
            segments,
            regions: act
                .regions
                .iter()
                .map(|r| RegionReport {
                    label: r.label.to_string(),
                    cycle: r.cycle.iter().map(|v| v.name()).collect(),
                    edge_perimeter: r.edge_perimeter,
                    perimeter: r.perimeter(),
                    limit: 24 * act.d.value,
                })
                .collect(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "D = {}{}", self.d, if self.exact { "" } else { " (upper bound)" });
        let _ = writeln!(s, "segments:");
        for g in &self.segments {
            let _ = writeln!(
                s,
                "  {:>5} -> {:<5} {:<10} len {:>4}  bound {:>4} = {:<28} slack {:>4}",
                g.from, g.to, g.label, g.length, g.bound, g.bound_expr, g.slack
            );
        }
        let _ = writeln!(s, "regions:");
        for r in &self.regions {
            let _ = writeln!(
                s,
                "  {:<6} perimeter {:>4} (edge letters {:>4})  limit 24D = {}",
                r.label, r.perimeter, r.edge_perimeter, r.limit
            );
        }
        let _ = writeln!(
            s,
            "max segment {}, max perimeter {}, min slack {}, total slack {}",
            self.max_segment, self.max_perimeter, self.min_slack, self.total_slack
        );
        s
    }
}

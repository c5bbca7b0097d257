//! Text format, printing, JSON and command runners.
//!
//! A document declares the variables and the series space, then lists
//! generators and named candidates:
//!
//! ```text
//! indep t;
//! dep x;
//! F = t*x' - x - t;
//! support B = [{1}];
//! logsupport A = [{t*log}];
//! spec S = "power 2; shift 0";
//! ```

use std::sync::Arc;

use crate::diffpoly::{DiffPolynomial, GeneratorSet};
use crate::error::{Error, Result};
use crate::rational::{denom_u64, fmt_q, lcm_u64};
use crate::scalar::CoeffValuation;
use crate::series::{Exponent, SeriesSpace, SupportSet, TruncatedSeries};
use crate::transform::TransformSpec;
use crate::transseries::BoolTransseries;

pub mod commands;
pub mod json;
mod parse;

pub use parse::parse_document;

/// One system with its declarations and named candidates.
#[derive(Clone, Debug, PartialEq)]
pub struct Document {
    pub indep: Vec<String>,
    pub dep: Vec<String>,
    pub space: Arc<SeriesSpace>,
    pub field: Option<u64>,
    pub valuation: CoeffValuation,
    pub generators: Vec<(String, DiffPolynomial)>,
    pub series: Vec<(String, Vec<TruncatedSeries>)>,
    pub supports: Vec<(String, Vec<SupportSet>)>,
    pub logsupports: Vec<(String, Vec<BoolTransseries>)>,
    pub specs: Vec<(String, TransformSpec)>,
}

impl Document {
    pub fn new(
        indep: Vec<String>,
        dep: Vec<String>,
        space: Arc<SeriesSpace>,
        field: Option<u64>,
        valuation: CoeffValuation,
    ) -> Self {
        Document {
            indep,
            dep,
            space,
            field,
            valuation,
            generators: Vec::new(),
            series: Vec::new(),
            supports: Vec::new(),
            logsupports: Vec::new(),
            specs: Vec::new(),
        }
    }

    pub fn generator_set(&self) -> Result<GeneratorSet> {
        GeneratorSet::new(self.generators.iter().map(|(_, f)| f.clone()).collect())
    }

    fn lookup<'a, T>(items: &'a [(String, T)], name: &str) -> Option<&'a T> {
        items.iter().find(|(n, _)| n == name).map(|(_, v)| v)
    }

    pub fn series_named(&self, name: &str) -> Option<&Vec<TruncatedSeries>> {
        Document::lookup(&self.series, name)
    }

    pub fn support_named(&self, name: &str) -> Option<&Vec<SupportSet>> {
        Document::lookup(&self.supports, name)
    }

    pub fn logsupport_named(&self, name: &str) -> Option<&Vec<BoolTransseries>> {
        Document::lookup(&self.logsupports, name)
    }

    pub fn spec_named(&self, name: &str) -> Option<&TransformSpec> {
        Document::lookup(&self.specs, name)
    }

    /// A spec given either by name or as literal text.
    pub fn resolve_spec(&self, text: &str) -> Result<TransformSpec> {
        match self.spec_named(text.trim()) {
            Some(s) => Ok(s.clone()),
            None => TransformSpec::parse(text, self.indep.len()),
        }
    }

    /// Replaces the declared grid by the coarsest one holding every stored
    /// exponent.
    pub fn fit_grid(&mut self) -> Result<()> {
        let mut grid = vec![1u64; self.indep.len()];
        let mut visit = |e: &Exponent| {
            for (d, x) in grid.iter_mut().zip(&e.0) {
                *d = lcm_u64(*d, denom_u64(x));
            }
        };
        for (_, f) in &self.generators {
            f.terms().values().flat_map(|c| c.terms().keys()).for_each(&mut visit);
        }
        for (_, v) in &self.series {
            v.iter().flat_map(|s| s.terms().keys()).for_each(&mut visit);
        }
        for (_, v) in &self.supports {
            v.iter().flat_map(|s| s.points().iter()).for_each(&mut visit);
        }
        if grid != self.space.grid() {
            let (space, _) = SeriesSpace::new(grid, self.space.weight().to_vec())?;
            self.space = space;
        }
        Ok(())
    }

    /// Canonical text; parsing it gives back an equal document.
    pub fn print(&self) -> String {
        let t = &self.indep;
        let list = |v: Vec<String>| v.join(", ");
        let mut out = String::new();
        out.push_str(&format!("indep {};\n", list(t.clone())));
        out.push_str(&format!("dep {};\n", list(self.dep.clone())));
        out.push_str(&format!(
            "grid {};\n",
            list(self.space.grid().iter().map(u64::to_string).collect())
        ));
        out.push_str(&format!(
            "weight {};\n",
            list(self.space.weight().iter().map(fmt_q).collect())
        ));
        if let Some(d) = self.field {
            out.push_str(&format!("field sqrt({d});\n"));
        }
        out.push_str(&format!("valuation {};\n", self.valuation));
        for (name, f) in &self.generators {
            out.push_str(&format!("{name} = {};\n", f.format_with(t, &self.dep)));
        }
        for (name, v) in &self.series {
            let items: Vec<String> = v.iter().map(|s| s.format_with(t)).collect();
            out.push_str(&format!("series {name} = [{}];\n", items.join(", ")));
        }
        for (name, v) in &self.supports {
            let items: Vec<String> = v.iter().map(ToString::to_string).collect();
            out.push_str(&format!("support {name} = [{}];\n", items.join(", ")));
        }
        for (name, v) in &self.logsupports {
            let items: Vec<String> = v.iter().map(|b| b.format_with(&t[0])).collect();
            out.push_str(&format!("logsupport {name} = [{}];\n", items.join(", ")));
        }
        for (name, s) in &self.specs {
            out.push_str(&format!("spec {name} = \"{s}\";\n"));
        }
        out
    }
}

/// Names for transformed dependent variables: `z` or `z1, …, zn`, avoiding
/// clashes with the independent variables.
pub fn transformed_dep_names(indep: &[String], n: usize) -> Vec<String> {
    let mut base = "z".to_string();
    loop {
        let names: Vec<String> = if n == 1 {
            vec![base.clone()]
        } else {
            (1..=n).map(|i| format!("{base}{i}")).collect()
        };
        if names.iter().all(|z| !indep.contains(z)) {
            return names;
        }
        base.push('_');
    }
}

pub(crate) fn missing(kind: &str, name: &str) -> Error {
    Error::InvalidArgument(format!("no {kind} named '{name}' in the document"))
}

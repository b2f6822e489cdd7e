//! Typed access to string parameters.

use anyhow::{anyhow, Context, Result};
use cliquelab::bounds::Rational;
use cliquelab::{named_graph, NamedGraph};

use crate::spec::Params;

pub struct Args<'a> {
    params: &'a Params,
    defaults: &'a [(&'a str, &'a str)],
}

impl<'a> Args<'a> {
    pub fn new(params: &'a Params, defaults: &'a [(&'a str, &'a str)]) -> Self {
        Args { params, defaults }
    }

    /// The explicitly given parameters, without defaults.
    pub fn explicit(&self) -> Params {
        self.params.clone()
    }

    pub fn raw(&self, key: &str) -> Result<&'a str> {
        self.params
            .get(key)
            .map(String::as_str)
            .or_else(|| {
                self.defaults
                    .iter()
                    .find(|(k, _)| *k == key)
                    .map(|(_, v)| *v)
            })
            .ok_or_else(|| anyhow!("missing parameter {key}"))
    }

    pub fn usize(&self, key: &str) -> Result<usize> {
        let v = self.raw(key)?;
        v.parse()
            .with_context(|| format!("{key} = {v:?} is not a non-negative integer"))
    }

    pub fn f64(&self, key: &str) -> Result<f64> {
        let v = self.raw(key)?;
        let x: f64 = v
            .parse()
            .with_context(|| format!("{key} = {v:?} is not a number"))?;
        if !x.is_finite() {
            return Err(anyhow!("{key} must be finite"));
        }
        Ok(x)
    }

    pub fn u128(&self, key: &str) -> Result<u128> {
        let v = self.raw(key)?;
        v.parse()
            .with_context(|| format!("{key} = {v:?} is not a non-negative integer"))
    }

    /// `p/q` or an integer.
    pub fn rational(&self, key: &str) -> Result<Rational> {
        let v = self.raw(key)?;
        let parse = |s: &str| {
            s.trim()
                .parse::<i64>()
                .with_context(|| format!("{key} = {v:?} is not a fraction"))
        };
        match v.split_once('/') {
            Some((p, q)) => {
                let q = parse(q)?;
                if q == 0 {
                    return Err(anyhow!("{key} has zero denominator"));
                }
                Ok(Rational::new(parse(p)?, q))
            }
            None => Ok(Rational::from_integer(parse(v)?)),
        }
    }

    pub fn pattern(&self, key: &str) -> Result<NamedGraph> {
        Ok(named_graph(self.raw(key)?)?)
    }

    /// Every explicitly given key must be known.
    pub fn reject_unknown(&self, extra: &[&str]) -> Result<()> {
        for key in self.params.keys() {
            if !self.defaults.iter().any(|(k, _)| k == key) && !extra.contains(&key.as_str()) {
                let known: Vec<&str> = self
                    .defaults
                    .iter()
                    .map(|(k, _)| *k)
                    .chain(extra.iter().copied())
                    .collect();
                return Err(anyhow!(
                    "unknown parameter {key} (known: {})",
                    known.join(", ")
                ));
            }
        }
        Ok(())
    }
}

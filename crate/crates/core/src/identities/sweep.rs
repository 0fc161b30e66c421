//! Grid sweeps over identity instances.
//!
//! A grid is the cartesian product of value lists for `a, b, r, c, m`,
//! enumerated lexicographically in that order. Reports always come out in
//! grid order; parallel evaluation only changes how fast they arrive.
//!
//! Config files are flat `key = value` lines. Keys are `identity`, `a`, `b`,
//! `r`, `c`, `m`; values are inclusive integer ranges `lo..hi` or
//! comma-separated rationals. `#` starts a comment.
//!
//! ```text
//! identity = master
//! a = -2..2
//! b = -2..2
//! r = 0..3
//! c = 2, 1/2, -3
//! m = 0..16
//! ```

use std::str::FromStr;

use rayon::prelude::*;

use super::{evaluate, Bindings, IdentityError, IdentityId, IdentityInstance, IdentityReport, Param};
use crate::rational::Rational;

/// Reports evaluated per parallel batch.
const CHUNK: usize = 512;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepConfig {
    pub identity: IdentityId,
    /// `None` for a parameter means "use the identity's pin".
    pub a: Option<Vec<Rational>>,
    pub b: Option<Vec<Rational>>,
    pub r: Option<Vec<Rational>>,
    pub c: Option<Vec<Rational>>,
    pub m: Vec<u32>,
}

impl SweepConfig {
    pub fn new(identity: IdentityId) -> Self {
        Self { identity, a: None, b: None, r: None, c: None, m: Vec::new() }
    }

    fn values(&self, param: Param) -> Option<&Vec<Rational>> {
        match param {
            Param::A => self.a.as_ref(),
            Param::B => self.b.as_ref(),
            Param::R => self.r.as_ref(),
            Param::C => self.c.as_ref(),
        }
    }

    fn values_mut(&mut self, param: Param) -> &mut Option<Vec<Rational>> {
        match param {
            Param::A => &mut self.a,
            Param::B => &mut self.b,
            Param::R => &mut self.r,
            Param::C => &mut self.c,
        }
    }

    /// Checks every axis against the identity's pins and returns the
    /// resolved value lists for `a, b, r, c`.
    fn resolve_axes(&self) -> Result<[Vec<Rational>; 4], IdentityError> {
        let id = self.identity;
        let mut axes: [Vec<Rational>; 4] = Default::default();
        for (slot, param) in axes.iter_mut().zip(Param::ALL) {
            *slot = match (id.pin(param), self.values(param)) {
                (Some(pin), None) => vec![pin],
                (Some(pin), Some(values)) => {
                    if let Some(bad) = values.iter().find(|v| **v != pin) {
                        return Err(IdentityError::PinViolation {
                            identity: id,
                            param,
                            expected: Box::new(pin),
                            found: Box::new(bad.clone()),
                        });
                    }
                    if values.is_empty() {
                        return Err(IdentityError::EmptyGrid(param.to_string()));
                    }
                    vec![pin]
                }
                (None, None) => return Err(IdentityError::MissingParameter { identity: id, param }),
                (None, Some(values)) if values.is_empty() => {
                    return Err(IdentityError::EmptyGrid(param.to_string()))
                }
                (None, Some(values)) => values.clone(),
            };
        }
        if axes[3].iter().any(Rational::is_zero) {
            return Err(IdentityError::ZeroC);
        }
        if self.m.is_empty() {
            return Err(IdentityError::EmptyGrid("m".into()));
        }
        Ok(axes)
    }
}

/// Parses one value spec: `lo..hi` (inclusive integers) or `v1, v2, ...`.
pub fn parse_values(spec: &str) -> Result<Vec<Rational>, String> {
    let spec = spec.trim();
    if let Some((lo, hi)) = spec.split_once("..") {
        let lo: i64 = lo.trim().parse().map_err(|_| format!("bad range start `{}`", lo.trim()))?;
        let hi: i64 = hi.trim().parse().map_err(|_| format!("bad range end `{}`", hi.trim()))?;
        return Ok((lo..=hi).map(Rational::from).collect());
    }
    spec.split(',')
        .map(|v| v.trim().parse::<Rational>().map_err(|e| e.to_string()))
        .collect()
}

/// Like [`parse_values`], restricted to non-negative integers.
pub fn parse_m_values(spec: &str) -> Result<Vec<u32>, String> {
    parse_values(spec)?
        .into_iter()
        .map(|v| {
            v.to_i64()
                .and_then(|x| u32::try_from(x).ok())
                .ok_or_else(|| format!("m values must be non-negative integers, got {v}"))
        })
        .collect()
}

impl FromStr for SweepConfig {
    type Err = IdentityError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut identity = None;
        let mut axes: [Option<Vec<Rational>>; 4] = Default::default();
        let mut m = None;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let fail = |message: String| IdentityError::Config { line: line_no, message };
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .or_else(|| line.split_once(':'))
                .ok_or_else(|| fail(format!("expected `key = value`, got `{line}`")))?;
            let key = key.trim().to_ascii_lowercase();
            let duplicate = || fail(format!("duplicate key `{key}`"));
            match key.as_str() {
                "identity" => {
                    if identity.is_some() {
                        return Err(duplicate());
                    }
                    identity = Some(value.trim().parse::<IdentityId>()?);
                }
                "m" => {
                    if m.is_some() {
                        return Err(duplicate());
                    }
                    m = Some(parse_m_values(value).map_err(fail)?);
                }
                "a" | "b" | "r" | "c" => {
                    let slot = &mut axes["abrc".find(key.as_str()).expect("matched key")];
                    if slot.is_some() {
                        return Err(duplicate());
                    }
                    *slot = Some(parse_values(value).map_err(fail)?);
                }
                _ => return Err(fail(format!("unknown key `{key}`"))),
            }
        }
        let identity = identity.ok_or(IdentityError::Config { line: 0, message: "missing `identity`".into() })?;
        let mut config = SweepConfig::new(identity);
        for (param, values) in Param::ALL.into_iter().zip(axes) {
            *config.values_mut(param) = values;
        }
        config.m = m.ok_or(IdentityError::Config { line: 0, message: "missing `m`".into() })?;
        Ok(config)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SweepSummary {
    pub total: u64,
    pub passed: u64,
    pub failed: u64,
}

/// An in-order stream of reports over a validated grid.
pub struct Sweep {
    identity: IdentityId,
    axes: [Vec<Rational>; 4],
    m: Vec<u32>,
    next: usize,
    total: usize,
    parallel: bool,
    buffer: std::vec::IntoIter<IdentityReport>,
    summary: SweepSummary,
}

/// Validates the whole grid up front; nothing is evaluated on error.
pub fn sweep(config: &SweepConfig) -> Result<Sweep, IdentityError> {
    let axes = config.resolve_axes()?;
    let total = axes.iter().map(Vec::len).product::<usize>() * config.m.len();
    Ok(Sweep {
        identity: config.identity,
        axes,
        m: config.m.clone(),
        next: 0,
        total,
        parallel: false,
        buffer: Vec::new().into_iter(),
        summary: SweepSummary::default(),
    })
}

impl Sweep {
    /// Evaluate batches on the rayon pool. Output order is unchanged.
    pub fn parallel(mut self, enabled: bool) -> Self {
        self.parallel = enabled;
        self
    }

    /// Number of grid points.
    pub fn total(&self) -> usize {
        self.total
    }

    /// Tally of the reports yielded so far.
    pub fn summary(&self) -> SweepSummary {
        self.summary
    }

    /// Drains the stream, returning only the summary.
    pub fn finish(mut self) -> SweepSummary {
        for _ in self.by_ref() {}
        self.summary
    }

    /// Grid point `k` in lexicographic `(a, b, r, c, m)` order.
    fn instance(&self, mut k: usize) -> IdentityInstance {
        let m = self.m[k % self.m.len()];
        k /= self.m.len();
        let mut picks: [Option<Rational>; 4] = Default::default();
        for (slot, axis) in picks.iter_mut().zip(&self.axes).rev() {
            *slot = Some(axis[k % axis.len()].clone());
            k /= axis.len();
        }
        let [a, b, r, c] = picks;
        IdentityInstance::new(self.identity, &Bindings { a, b, r, c }, m).expect("grid validated against pins")
    }

    fn refill(&mut self) {
        let end = (self.next + CHUNK).min(self.total);
        let range = self.next..end;
        let reports: Vec<IdentityReport> = if self.parallel {
            range.into_par_iter().map(|k| evaluate(self.instance(k))).collect()
        } else {
            range.map(|k| evaluate(self.instance(k))).collect()
        };
        self.next = end;
        self.buffer = reports.into_iter();
    }
}

impl Iterator for Sweep {
    type Item = IdentityReport;

    fn next(&mut self) -> Option<IdentityReport> {
        if self.buffer.len() == 0 {
            if self.next >= self.total {
                return None;
            }
            self.refill();
        }
        let report = self.buffer.next()?;
        self.summary.total += 1;
        if report.pass {
            self.summary.passed += 1;
        } else {
            self.summary.failed += 1;
        }
        Some(report)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn values(spec: &str) -> Option<Vec<Rational>> {
        Some(parse_values(spec).unwrap())
    }

    #[test]
    fn value_specs() {
        assert_eq!(parse_values("-2..2").unwrap().len(), 5);
        assert_eq!(parse_values("3..2").unwrap().len(), 0);
        assert_eq!(parse_values("2, 1/2,-3").unwrap(), vec![2.into(), "1/2".parse().unwrap(), (-3).into()]);
        assert!(parse_values("1/0").is_err());
        assert!(parse_values("x..2").is_err());
        assert_eq!(parse_m_values("0..3").unwrap(), vec![0, 1, 2, 3]);
        assert!(parse_m_values("-1..3").is_err());
        assert!(parse_m_values("1/2").is_err());
    }

    #[test]
    fn grid_order_is_lexicographic() {
        let mut config = SweepConfig::new(IdentityId::GenPellC1);
        config.a = values("1, 2");
        config.b = values("5, 6");
        config.m = vec![0, 1];
        let order: Vec<_> = sweep(&config)
            .unwrap()
            .map(|r| (r.instance.params().a.clone(), r.instance.params().b.clone(), r.instance.m()))
            .collect();
        let expected: Vec<_> = [(1, 5), (1, 6), (2, 5), (2, 6)]
            .into_iter()
            .flat_map(|(a, b)| [0, 1].map(|m| (Rational::from(a), Rational::from(b), m)))
            .collect();
        assert_eq!(order, expected);
    }

    #[test]
    fn parallel_matches_sequential() {
        let mut config = SweepConfig::new(IdentityId::Master);
        config.a = values("-1..1");
        config.b = values("0..2");
        config.r = values("-1..2");
        config.c = values("2, 1/2, -3");
        config.m = (0..20).collect();
        let key = |r: IdentityReport| (r.instance, r.lhs, r.rhs, r.pass);
        let seq: Vec<_> = sweep(&config).unwrap().map(key).collect();
        let par: Vec<_> = sweep(&config).unwrap().parallel(true).map(key).collect();
        assert_eq!(seq.len(), 3 * 3 * 4 * 3 * 20);
        assert_eq!(seq, par);
    }

    #[test]
    fn summary_counts() {
        let mut config = SweepConfig::new(IdentityId::Sury);
        config.m = vec![0];
        let mut s = sweep(&config).unwrap();
        let only = s.next().unwrap();
        assert!(only.pass);
        assert_eq!(only.lhs, Rational::from(2));
        assert!(s.next().is_none());
        assert_eq!(s.summary(), SweepSummary { total: 1, passed: 1, failed: 0 });
    }

    #[test]
    fn invalid_grids_are_rejected_before_evaluation() {
        let mut empty = SweepConfig::new(IdentityId::Sury);
        empty.m = vec![];
        assert!(matches!(sweep(&empty), Err(IdentityError::EmptyGrid(_))));

        let mut empty_axis = SweepConfig::new(IdentityId::GenFib);
        empty_axis.a = values("3..2");
        empty_axis.b = values("1");
        empty_axis.c = values("2");
        empty_axis.m = vec![1];
        assert_eq!(sweep(&empty_axis).err(), Some(IdentityError::EmptyGrid("a".into())));

        let mut pinned = SweepConfig::new(IdentityId::Sury);
        pinned.r = values("1, 2");
        pinned.m = vec![1];
        assert!(matches!(sweep(&pinned), Err(IdentityError::PinViolation { param: Param::R, .. })));

        let mut zero = SweepConfig::new(IdentityId::FibC);
        zero.c = values("-1..1");
        zero.m = vec![1];
        assert_eq!(sweep(&zero).err(), Some(IdentityError::ZeroC));

        let mut missing = SweepConfig::new(IdentityId::Master);
        missing.m = vec![1];
        assert!(matches!(sweep(&missing), Err(IdentityError::MissingParameter { .. })));
    }

    #[test]
    fn config_file_format() {
        let text = "# master grid\nidentity = master\na = -2..2\nb = -2..2\nr = 0..3\nc = 2, 1/2, -3\nm = 0..16\n";
        let config: SweepConfig = text.parse().unwrap();
        assert_eq!(config.identity, IdentityId::Master);
        assert_eq!(config.c.as_ref().unwrap().len(), 3);
        assert_eq!(config.m.len(), 17);
        assert_eq!(sweep(&config).unwrap().total(), 5 * 5 * 4 * 3 * 17);

        assert!(matches!(
            "identity = sury\nm = 0..3\nq = 1".parse::<SweepConfig>(),
            Err(IdentityError::Config { line: 3, .. })
        ));
        assert!(matches!(
            "identity = sury\nm = 1\nm = 2".parse::<SweepConfig>(),
            Err(IdentityError::Config { line: 3, .. })
        ));
        assert!(matches!("m = 1".parse::<SweepConfig>(), Err(IdentityError::Config { .. })));
        assert!(matches!(
            "identity = tribonacci\nm = 1".parse::<SweepConfig>(),
            Err(IdentityError::UnknownIdentity(_))
        ));
    }
}

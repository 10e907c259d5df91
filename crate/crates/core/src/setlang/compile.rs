use std::collections::HashMap;

use thiserror::Error;

use super::ast::{Program, Query, SetExpr, SliceKind, UniverseKind};
use crate::bcore::{HalfInt, Real};
use crate::indicator::{
    complement, disk_set, intersect_all, interval_set, Disk, Indicator, IndicatorError, Interval, Point,
};
use crate::numtheory::{multiples_of, NumError};
use crate::tomography::{self, SetCollection, Slice, TomographyError};
use crate::whitney::{TermCounter, WhitneyError, WhitneyOracle};

/// Which evaluator realizes unions and layer queries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Backend {
    /// n member evaluations per query via the B-function.
    #[default]
    Tomography,
    /// `2^n - 1` intersection terms per query.
    Whitney,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CompileError {
    #[error(transparent)]
    Whitney(#[from] WhitneyError),
    #[error(transparent)]
    Tomography(#[from] TomographyError),
    #[error(transparent)]
    Indicator(#[from] IndicatorError),
    #[error(transparent)]
    Number(#[from] NumError),
    #[error("unknown set `{0}`")]
    UnknownName(String),
    #[error("{expr} is not defined over universe `{universe}`")]
    WrongUniverse { expr: String, universe: UniverseKind },
    #[error("query index {index} out of range ({len} queries)")]
    NoSuchQuery { index: usize, len: usize },
    #[error("bad probe `{text}` for universe `{universe}`")]
    BadProbe { text: String, universe: UniverseKind },
}

/// Universe element types the language can compile to.
pub trait Element: Send + Sync + Sized + 'static {
    const KIND: UniverseKind;

    fn primitive(expr: &SetExpr) -> Result<Indicator<Self>, CompileError>;

    fn parse_probe(text: &str) -> Result<Self, CompileError>;

    fn format_probe(&self) -> String;
}

fn wrong_universe<E: Element>(expr: &SetExpr) -> CompileError {
    CompileError::WrongUniverse { expr: expr.to_string(), universe: E::KIND }
}

fn bad_probe(text: &str, universe: UniverseKind) -> CompileError {
    CompileError::BadProbe { text: text.to_owned(), universe }
}

fn real(value: f64) -> Result<Real, CompileError> {
    Real::new(value).map_err(|_| CompileError::Indicator(IndicatorError::InvalidRadius(value)))
}

impl Element for Real {
    const KIND: UniverseKind = UniverseKind::RealLine;

    fn primitive(expr: &SetExpr) -> Result<Indicator<Real>, CompileError> {
        match *expr {
            SetExpr::Interval { lower, upper, left, right } => {
                Ok(interval_set(Interval::new(real(lower)?, real(upper)?, left, right)?))
            }
            _ => Err(wrong_universe::<Real>(expr)),
        }
    }

    fn parse_probe(text: &str) -> Result<Real, CompileError> {
        text.trim()
            .parse::<f64>()
            .ok()
            .and_then(|v| Real::new(v).ok())
            .ok_or_else(|| bad_probe(text, Self::KIND))
    }

    fn format_probe(&self) -> String {
        self.to_string()
    }
}

impl Element for Point {
    const KIND: UniverseKind = UniverseKind::Plane;

    fn primitive(expr: &SetExpr) -> Result<Indicator<Point>, CompileError> {
        match *expr {
            SetExpr::Disk { cx, cy, radius, boundary } => {
                Ok(disk_set(Disk::new(real(cx)?, real(cy)?, real(radius)?, boundary)?))
            }
            _ => Err(wrong_universe::<Point>(expr)),
        }
    }

    fn parse_probe(text: &str) -> Result<Point, CompileError> {
        let (x, y) = text.split_once(',').ok_or_else(|| bad_probe(text, Self::KIND))?;
        Ok((Real::parse_probe(x)?, Real::parse_probe(y)?))
    }

    fn format_probe(&self) -> String {
        format!("{},{}", self.0, self.1)
    }
}

impl Element for u64 {
    const KIND: UniverseKind = UniverseKind::Naturals;

    fn primitive(expr: &SetExpr) -> Result<Indicator<u64>, CompileError> {
        match *expr {
            SetExpr::Interval { lower, upper, left, right } => {
                let iv = interval_set(Interval::new(lower as i64, upper as i64, left, right)?);
                let label = iv.label().to_owned();
                Ok(Indicator::from_membership(label, move |&x: &u64| iv.eval(&(x as i64))))
            }
            SetExpr::Divides(j) => Ok(multiples_of(j)?),
            _ => Err(wrong_universe::<u64>(expr)),
        }
    }

    fn parse_probe(text: &str) -> Result<u64, CompileError> {
        text.trim().parse().map_err(|_| bad_probe(text, Self::KIND))
    }

    fn format_probe(&self) -> String {
        self.to_string()
    }
}

/// A compiled query: a 0/1 indicator, or the integer membership count.
pub enum CompiledQuery<E> {
    Set(Indicator<E>),
    Count { members: SetCollection<E>, backend: Backend },
}

impl<E> CompiledQuery<E> {
    pub fn eval(&self, x: &E) -> i64 {
        match self {
            CompiledQuery::Set(ind) => ind.eval(x).as_int().expect("0/1 indicator"),
            CompiledQuery::Count { members, backend: Backend::Tomography } => tomography::count(members, x).get(),
            CompiledQuery::Count { members, backend: Backend::Whitney } => {
                // sum_m m * E_m, with E_m from the expansion
                let layers = WhitneyOracle::new()
                    .exact_layers(members, x, &mut TermCounter::default())
                    .expect("size checked at compile time");
                layers.iter().enumerate().map(|(m, e)| m as i64 * e).sum()
            }
        }
    }

    /// Largest value the query can take.
    pub fn max_value(&self) -> i64 {
        match self {
            CompiledQuery::Set(_) => 1,
            CompiledQuery::Count { members, .. } => members.len() as i64,
        }
    }
}

/// Named sets of one program, compiled for one backend.
pub struct Context<E> {
    backend: Backend,
    oracle: WhitneyOracle,
    env: HashMap<String, Indicator<E>>,
}

impl<E: Element> Context<E> {
    pub fn new(program: &Program, backend: Backend) -> Result<Self, CompileError> {
        if program.universe != E::KIND {
            return Err(CompileError::WrongUniverse {
                expr: format!("universe {}", program.universe),
                universe: E::KIND,
            });
        }
        let mut ctx = Context { backend, oracle: WhitneyOracle::new(), env: HashMap::new() };
        for binding in &program.sets {
            let ind = ctx.expr(&binding.expr)?.with_label(binding.name.as_str());
            ctx.env.insert(binding.name.clone(), ind);
        }
        Ok(ctx)
    }

    pub fn set(&self, name: &str) -> Option<&Indicator<E>> {
        self.env.get(name)
    }

    pub fn query(&self, query: &Query) -> Result<CompiledQuery<E>, CompileError> {
        match query {
            Query::Set(expr) => Ok(CompiledQuery::Set(self.expr(expr)?)),
            Query::Count(items) => {
                let members = self.collection(items)?;
                if self.backend == Backend::Whitney {
                    self.oracle.check_size(members.len())?;
                }
                Ok(CompiledQuery::Count { members, backend: self.backend })
            }
        }
    }

    fn collection(&self, items: &[SetExpr]) -> Result<SetCollection<E>, CompileError> {
        items.iter().map(|e| self.expr(e)).collect::<Result<Vec<_>, _>>().map(SetCollection::new)
    }

    pub fn expr(&self, expr: &SetExpr) -> Result<Indicator<E>, CompileError> {
        let label = expr.to_string();
        match expr {
            SetExpr::Ref(name) => self.env.get(name).cloned().ok_or_else(|| CompileError::UnknownName(name.clone())),
            SetExpr::Interval { .. } | SetExpr::Disk { .. } | SetExpr::Divides(_) => E::primitive(expr),
            SetExpr::Intersect(items) => {
                let members = self.collection(items)?;
                Ok(intersect_all(members.members()).with_label(label))
            }
            SetExpr::Union(items) => self.layer(label, Slice::Union, self.collection(items)?),
            SetExpr::Slice { kind, m, members } => {
                let slice = match kind {
                    SliceKind::Exactly => Slice::Exactly(*m),
                    SliceKind::AtMost => Slice::AtMost(*m),
                    SliceKind::MoreThan => Slice::MoreThan(*m),
                };
                self.layer(label, slice, self.collection(members)?)
            }
            SetExpr::Complement(inner) => match (self.backend, inner.as_ref()) {
                (Backend::Whitney, SetExpr::Union(items)) => {
                    let members = self.collection(items)?;
                    self.oracle.check_size(members.len())?;
                    let oracle = self.oracle;
                    Ok(Indicator::from_membership(label, move |x| {
                        oracle
                            .complement_expansion(&members, x, &mut TermCounter::default())
                            .expect("size checked at compile time")
                    }))
                }
                _ => Ok(complement(&self.expr(inner)?).with_label(label)),
            },
        }
    }

    fn layer(&self, label: String, slice: Slice, members: SetCollection<E>) -> Result<Indicator<E>, CompileError> {
        slice.validate(members.len())?;
        let n = members.len();
        match self.backend {
            Backend::Tomography => Ok(Indicator::from_membership(label, move |x| {
                slice.from_count(n, tomography::count(&members, x))
            })),
            Backend::Whitney => {
                self.oracle.check_size(n)?;
                let oracle = self.oracle;
                Ok(Indicator::from_membership(label, move |x| {
                    let mut counter = TermCounter::default();
                    if slice == Slice::Union {
                        return oracle.union(&members, x, &mut counter).expect("size checked");
                    }
                    let layers = oracle.exact_layers(&members, x, &mut counter).expect("size checked");
                    let picked: i64 = match slice {
                        Slice::Exactly(m) => layers[m as usize],
                        Slice::AtMost(m) => layers[1..=m as usize].iter().sum(),
                        Slice::MoreThan(m) => layers[m as usize + 1..].iter().sum(),
                        Slice::Union => unreachable!(),
                    };
                    HalfInt::from_int(picked)
                }))
            }
        }
    }
}

/// Every query of a program, compiled for the program's universe.
pub enum CompiledProgram {
    RealLine(Vec<CompiledQuery<Real>>),
    Plane(Vec<CompiledQuery<Point>>),
    Naturals(Vec<CompiledQuery<u64>>),
}

fn compile_all<E: Element>(program: &Program, backend: Backend) -> Result<Vec<CompiledQuery<E>>, CompileError> {
    let ctx = Context::<E>::new(program, backend)?;
    program.queries.iter().map(|q| ctx.query(q)).collect()
}

fn eval_text<E: Element>(queries: &[CompiledQuery<E>], index: usize, probe: &str) -> Result<i64, CompileError> {
    let q = queries
        .get(index)
        .ok_or(CompileError::NoSuchQuery { index, len: queries.len() })?;
    Ok(q.eval(&E::parse_probe(probe)?))
}

impl CompiledProgram {
    pub fn compile(program: &Program, backend: Backend) -> Result<Self, CompileError> {
        Ok(match program.universe {
            UniverseKind::RealLine => CompiledProgram::RealLine(compile_all(program, backend)?),
            UniverseKind::Plane => CompiledProgram::Plane(compile_all(program, backend)?),
            UniverseKind::Naturals => CompiledProgram::Naturals(compile_all(program, backend)?),
        })
    }

    pub fn len(&self) -> usize {
        match self {
            CompiledProgram::RealLine(q) => q.len(),
            CompiledProgram::Plane(q) => q.len(),
            CompiledProgram::Naturals(q) => q.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Evaluates query `index` at a probe written in the universe's syntax:
    /// `1.5` (real), `0,0` (plane) or `7` (naturals).
    pub fn eval_text(&self, index: usize, probe: &str) -> Result<i64, CompileError> {
        match self {
            CompiledProgram::RealLine(q) => eval_text(q, index, probe),
            CompiledProgram::Plane(q) => eval_text(q, index, probe),
            CompiledProgram::Naturals(q) => eval_text(q, index, probe),
        }
    }
}

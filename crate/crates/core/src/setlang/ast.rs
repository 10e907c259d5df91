use std::fmt;

use crate::bcore::Border;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UniverseKind {
    RealLine,
    Plane,
    Naturals,
}

impl UniverseKind {
    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "real" => Some(UniverseKind::RealLine),
            "plane" => Some(UniverseKind::Plane),
            "naturals" => Some(UniverseKind::Naturals),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            UniverseKind::RealLine => "real",
            UniverseKind::Plane => "plane",
            UniverseKind::Naturals => "naturals",
        }
    }
}

impl fmt::Display for UniverseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SliceKind {
    Exactly,
    AtMost,
    MoreThan,
}

impl SliceKind {
    pub fn keyword(self) -> &'static str {
        match self {
            SliceKind::Exactly => "exactly",
            SliceKind::AtMost => "atmost",
            SliceKind::MoreThan => "morethan",
        }
    }
}

/// A set-valued expression. Names in `Ref` are resolved at parse time.
#[derive(Debug, Clone, PartialEq)]
pub enum SetExpr {
    Ref(String),
    Interval {
        lower: f64,
        upper: f64,
        left: Border,
        right: Border,
    },
    Disk {
        cx: f64,
        cy: f64,
        radius: f64,
        boundary: Border,
    },
    Divides(u64),
    Union(Vec<SetExpr>),
    Intersect(Vec<SetExpr>),
    Complement(Box<SetExpr>),
    Slice {
        kind: SliceKind,
        m: i64,
        members: Vec<SetExpr>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub enum Query {
    Set(SetExpr),
    Count(Vec<SetExpr>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Binding {
    pub name: String,
    pub expr: SetExpr,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Program {
    pub universe: UniverseKind,
    pub sets: Vec<Binding>,
    pub queries: Vec<Query>,
}

fn write_list(f: &mut fmt::Formatter<'_>, items: &[SetExpr]) -> fmt::Result {
    for (i, item) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{item}")?;
    }
    Ok(())
}

impl fmt::Display for SetExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SetExpr::Ref(name) => f.write_str(name),
            SetExpr::Interval { lower, upper, left, right } => {
                let open = if *left == Border::Closed { '[' } else { '(' };
                let close = if *right == Border::Closed { ']' } else { ')' };
                write!(f, "interval{open}{lower}, {upper}{close}")
            }
            SetExpr::Disk { cx, cy, radius, boundary } => {
                let kind = match boundary {
                    Border::Open => "open",
                    Border::Closed => "closed",
                };
                write!(f, "disk({cx}, {cy}, {radius}, {kind})")
            }
            SetExpr::Divides(j) => write!(f, "divides({j})"),
            SetExpr::Union(items) => {
                f.write_str("union(")?;
                write_list(f, items)?;
                f.write_str(")")
            }
            SetExpr::Intersect(items) => {
                f.write_str("inter(")?;
                write_list(f, items)?;
                f.write_str(")")
            }
            SetExpr::Complement(inner) => write!(f, "not({inner})"),
            SetExpr::Slice { kind, m, members } => {
                write!(f, "{}({m}; ", kind.keyword())?;
                write_list(f, members)?;
                f.write_str(")")
            }
        }
    }
}

impl fmt::Display for Query {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Query::Set(expr) => write!(f, "{expr}"),
            Query::Count(items) => {
                f.write_str("count(")?;
                write_list(f, items)?;
                f.write_str(")")
            }
        }
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "universe {};", self.universe)?;
        for b in &self.sets {
            writeln!(f, "set {} = {};", b.name, b.expr)?;
        }
        for q in &self.queries {
            writeln!(f, "query {q};")?;
        }
        Ok(())
    }
}

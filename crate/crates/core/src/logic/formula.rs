use std::fmt;

/// Syntax tree over named atoms. `->` and `<->` never appear here: the
/// parser expands them into `!`, `&`, `|`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    True,
    False,
    Atom(String),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(name: &str) -> Self {
        Formula::Atom(name.to_string())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    /// `a -> b` as `!a | b`.
    pub fn implication(a: Formula, b: Formula) -> Self {
        Formula::or(Formula::not(a), b)
    }

    /// `a <-> b` as `(a & b) | (!a & !b)`.
    pub fn biconditional(a: Formula, b: Formula) -> Self {
        Formula::or(
            Formula::and(a.clone(), b.clone()),
            Formula::and(Formula::not(a), Formula::not(b)),
        )
    }

    /// Left-nested conjunction; `T` when empty.
    pub fn and_all(items: impl IntoIterator<Item = Formula>) -> Self {
        items
            .into_iter()
            .reduce(Formula::and)
            .unwrap_or(Formula::True)
    }

    /// Left-nested disjunction; `F` when empty.
    pub fn or_all(items: impl IntoIterator<Item = Formula>) -> Self {
        items
            .into_iter()
            .reduce(Formula::or)
            .unwrap_or(Formula::False)
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::True | Formula::False | Formula::Atom(_) => 0,
            Formula::Not(a) => 1 + a.depth(),
            Formula::And(a, b) | Formula::Or(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    pub fn is_constant(&self) -> bool {
        matches!(self, Formula::True | Formula::False)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::True => write!(f, "T"),
            Formula::False => write!(f, "F"),
            Formula::Atom(name) => write!(f, "{name}"),
            Formula::Not(a) => write!(f, "!{a}"),
            Formula::And(a, b) => write!(f, "({a} & {b})"),
            Formula::Or(a, b) => write!(f, "({a} | {b})"),
        }
    }
}

//! The stratified formula language: Boolean formulas, conditionals `φ > ψ`
//! between Boolean formulas, belief `B φ` over conditional-level formulas,
//! global necessity `[] φ` over Boolean formulas, and Boolean combinations of
//! all of these.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Formula {
    Atom(String),
    Not(Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    /// `φ > ψ`: if φ were the case, ψ would be the case.
    Cond(Box<Formula>, Box<Formula>),
    /// `B φ`: the agent believes φ.
    Bel(Box<Formula>),
    /// `[] φ`: φ holds at every state.
    Box(Box<Formula>),
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Self {
        Formula::Atom(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn or(f: Formula, g: Formula) -> Self {
        Formula::Or(Box::new(f), Box::new(g))
    }

    pub fn and(f: Formula, g: Formula) -> Self {
        Formula::And(Box::new(f), Box::new(g))
    }

    pub fn implies(f: Formula, g: Formula) -> Self {
        Formula::Implies(Box::new(f), Box::new(g))
    }

    pub fn iff(f: Formula, g: Formula) -> Self {
        Formula::Iff(Box::new(f), Box::new(g))
    }

    pub fn cond(f: Formula, g: Formula) -> Self {
        Formula::Cond(Box::new(f), Box::new(g))
    }

    pub fn bel(f: Formula) -> Self {
        Formula::Bel(Box::new(f))
    }

    pub fn boxed(f: Formula) -> Self {
        Formula::Box(Box::new(f))
    }

    /// Rewrites `∧`, `→` and `↔` into `¬`/`∨` form, recursively.
    pub fn expand_derived(&self) -> Formula {
        use Formula::*;
        match self {
            Atom(a) => Atom(a.clone()),
            Not(f) => Formula::not(f.expand_derived()),
            Or(f, g) => Formula::or(f.expand_derived(), g.expand_derived()),
            And(f, g) => Formula::not(Formula::or(
                Formula::not(f.expand_derived()),
                Formula::not(g.expand_derived()),
            )),
            Implies(f, g) => Formula::or(Formula::not(f.expand_derived()), g.expand_derived()),
            Iff(f, g) => {
                let (f, g) = (f.expand_derived(), g.expand_derived());
                // (f → g) ∧ (g → f)
                Formula::not(Formula::or(
                    Formula::not(Formula::or(Formula::not(f.clone()), g.clone())),
                    Formula::not(Formula::or(Formula::not(g), f)),
                ))
            }
            Cond(f, g) => Formula::cond(f.expand_derived(), g.expand_derived()),
            Bel(f) => Formula::bel(f.expand_derived()),
            Box(f) => Formula::boxed(f.expand_derived()),
        }
    }

    /// Evaluates a Boolean formula under an assignment of truth values to
    /// atoms. Returns `None` if a modal operator occurs anywhere.
    pub fn eval_boolean(&self, assignment: &dyn Fn(&str) -> bool) -> Option<bool> {
        use Formula::*;
        Some(match self {
            Atom(a) => assignment(a),
            Not(f) => !f.eval_boolean(assignment)?,
            Or(f, g) => f.eval_boolean(assignment)? | g.eval_boolean(assignment)?,
            And(f, g) => f.eval_boolean(assignment)? & g.eval_boolean(assignment)?,
            Implies(f, g) => !f.eval_boolean(assignment)? | g.eval_boolean(assignment)?,
            Iff(f, g) => f.eval_boolean(assignment)? == g.eval_boolean(assignment)?,
            Cond(..) | Bel(_) | Box(_) => return None,
        })
    }

    /// Immediate subformulas, left to right.
    pub fn children(&self) -> Vec<&Formula> {
        use Formula::*;
        match self {
            Atom(_) => vec![],
            Not(f) | Bel(f) | Box(f) => vec![f],
            Or(f, g) | And(f, g) | Implies(f, g) | Iff(f, g) | Cond(f, g) => vec![f, g],
        }
    }
}

/// The most specific layer of the stratified language a formula belongs to.
///
/// Layers nest: `Phi0 ⊂ Phi1 ⊂ Phi`, `PhiCond ⊂ Phi1`, and `PhiB`, `PhiBox`
/// are both contained in `Phi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SyntacticClass {
    /// Boolean formulas.
    Phi0,
    /// `φ > ψ` with Boolean `φ`, `ψ`.
    PhiCond,
    /// Boolean combinations of Boolean formulas and conditionals.
    Phi1,
    /// `B φ` with `φ` in `Phi1`.
    PhiB,
    /// `[] φ` with Boolean `φ`.
    PhiBox,
    /// Boolean combinations of `Phi1`, `PhiB` and `PhiBox` formulas.
    Phi,
    Illformed,
}

impl SyntacticClass {
    /// Whether every formula of class `self` is also a formula of `other`.
    pub fn within(self, other: SyntacticClass) -> bool {
        use SyntacticClass::*;
        match (self, other) {
            (Illformed, _) | (_, Illformed) => false,
            (a, b) if a == b => true,
            (Phi0, Phi1) | (PhiCond, Phi1) => true,
            (_, Phi) => true,
            _ => false,
        }
    }

    pub fn is_wellformed(self) -> bool {
        self != SyntacticClass::Illformed
    }

    /// Whether formulas of this class may appear under `B`.
    pub fn is_belief_operand(self) -> bool {
        self.within(SyntacticClass::Phi1)
    }
}

impl fmt::Display for SyntacticClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            SyntacticClass::Phi0 => "Phi0",
            SyntacticClass::PhiCond => "PhiCond",
            SyntacticClass::Phi1 => "Phi1",
            SyntacticClass::PhiB => "PhiB",
            SyntacticClass::PhiBox => "PhiBox",
            SyntacticClass::Phi => "Phi",
            SyntacticClass::Illformed => "Illformed",
        };
        f.write_str(name)
    }
}

fn boolean_combination(classes: &[SyntacticClass]) -> SyntacticClass {
    use SyntacticClass::*;
    if classes.contains(&Illformed) {
        Illformed
    } else if classes.iter().all(|&c| c == Phi0) {
        Phi0
    } else if classes.iter().all(|&c| c.within(Phi1)) {
        Phi1
    } else {
        Phi
    }
}

pub fn classify(f: &Formula) -> SyntacticClass {
    use SyntacticClass::*;
    match f {
        Formula::Atom(_) => Phi0,
        Formula::Not(g) => boolean_combination(&[classify(g)]),
        Formula::Or(g, h) | Formula::And(g, h) | Formula::Implies(g, h) | Formula::Iff(g, h) => {
            boolean_combination(&[classify(g), classify(h)])
        }
        Formula::Cond(g, h) => {
            if classify(g) == Phi0 && classify(h) == Phi0 {
                PhiCond
            } else {
                Illformed
            }
        }
        Formula::Bel(g) => {
            if classify(g).is_belief_operand() {
                PhiB
            } else {
                Illformed
            }
        }
        Formula::Box(g) => {
            if classify(g) == Phi0 {
                PhiBox
            } else {
                Illformed
            }
        }
    }
}

/// Which operand restriction of the language a formula breaks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StratificationClause {
    ConditionalAntecedent,
    ConditionalConsequent,
    BeliefOperand,
    BoxOperand,
}

/// The innermost offending node of an ill-formed formula.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{}", describe_violation(*.clause, *.operand_class, .subterm))]
pub struct StratificationError {
    pub clause: StratificationClause,
    /// Class of the operand that broke the restriction.
    pub operand_class: SyntacticClass,
    /// The offending node, printed.
    pub subterm: String,
}

fn describe_violation(
    clause: StratificationClause,
    operand: SyntacticClass,
    subterm: &str,
) -> String {
    use StratificationClause::*;
    use SyntacticClass::*;
    let what = match (clause, operand) {
        (ConditionalAntecedent, PhiCond | Phi1) => "conditional nested in conditional antecedent",
        (ConditionalConsequent, PhiCond | Phi1) => "conditional nested in conditional consequent",
        (ConditionalAntecedent, _) => "modal operator in conditional antecedent",
        (ConditionalConsequent, _) => "modal operator in conditional consequent",
        (BeliefOperand, _) => "belief or necessity operator nested under B",
        (BoxOperand, _) => "modal operator nested under []",
    };
    format!("{what} (operand class {operand}) in `{subterm}`")
}

/// Locates the innermost stratification violation, if any.
pub fn stratification_error(f: &Formula) -> Option<StratificationError> {
    for child in f.children() {
        if let Some(err) = stratification_error(child) {
            return Some(err);
        }
    }
    let violation = |clause, operand: &Formula| StratificationError {
        clause,
        operand_class: classify(operand),
        subterm: f.to_string(),
    };
    match f {
        Formula::Cond(g, _) if classify(g) != SyntacticClass::Phi0 => {
            Some(violation(StratificationClause::ConditionalAntecedent, g))
        }
        Formula::Cond(_, h) if classify(h) != SyntacticClass::Phi0 => {
            Some(violation(StratificationClause::ConditionalConsequent, h))
        }
        Formula::Bel(g) if !classify(g).is_belief_operand() => {
            Some(violation(StratificationClause::BeliefOperand, g))
        }
        Formula::Box(g) if classify(g) != SyntacticClass::Phi0 => {
            Some(violation(StratificationClause::BoxOperand, g))
        }
        _ => None,
    }
}

/// Atom names occurring in `f`.
pub fn atoms(f: &Formula) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    collect_atoms(f, &mut out);
    out
}

fn collect_atoms(f: &Formula, out: &mut BTreeSet<String>) {
    if let Formula::Atom(a) = f {
        out.insert(a.clone());
    }
    for child in f.children() {
        collect_atoms(child, out);
    }
}

/// Truth tables beyond this many atoms are refused.
pub const MAX_TAUTOLOGY_ATOMS: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TautologyError {
    #[error("tautology checking needs a Boolean formula, got class {0}")]
    NotBoolean(SyntacticClass),
    #[error("{0} atoms exceed the truth-table limit of {MAX_TAUTOLOGY_ATOMS}")]
    TooManyAtoms(usize),
}

/// Decides whether a Boolean formula is true under every assignment to its
/// atoms.
pub fn is_tautology(f: &Formula) -> Result<bool, TautologyError> {
    let class = classify(f);
    if class != SyntacticClass::Phi0 {
        return Err(TautologyError::NotBoolean(class));
    }
    let names: Vec<String> = atoms(f).into_iter().collect();
    if names.len() > MAX_TAUTOLOGY_ATOMS {
        return Err(TautologyError::TooManyAtoms(names.len()));
    }
    for row in 0u64..1 << names.len() {
        let value = |a: &str| {
            let i = names.binary_search_by(|n| n.as_str().cmp(a)).unwrap();
            row & (1 << i) != 0
        };
        if !f.eval_boolean(&value).expect("class Phi0 has no modal operators") {
            return Ok(false);
        }
    }
    Ok(true)
}

//! Concrete text syntax for formulas.
//!
//! Precedence, tightest first:
//!
//! | operators            | associativity |
//! |----------------------|---------------|
//! | `~`, `B`, `[]`       | prefix        |
//! | `&`                  | left          |
//! | `\|`                 | left          |
//! | `>`                  | none          |
//! | `->`                 | right         |
//! | `<->`                | left          |
//!
//! Atoms match `[a-z][a-z0-9_]*`. The Unicode forms `¬ ∧ ∨ → ↔ □` are
//! accepted on input; the printer only emits ASCII.

use std::fmt;

use thiserror::Error;

use crate::formula::{stratification_error, Formula, StratificationError};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("parse error at byte {offset}: expected {expected}, found {found}")]
pub struct ParseError {
    pub offset: usize,
    pub expected: String,
    pub found: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("not a formula of the language: {0}")]
    Stratification(#[from] StratificationError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Atom(String),
    Not,
    Bel,
    Box,
    And,
    Or,
    Cond,
    Implies,
    Iff,
    LParen,
    RParen,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Atom(a) => write!(f, "atom `{a}`"),
            Tok::Not => f.write_str("`~`"),
            Tok::Bel => f.write_str("`B`"),
            Tok::Box => f.write_str("`[]`"),
            Tok::And => f.write_str("`&`"),
            Tok::Or => f.write_str("`|`"),
            Tok::Cond => f.write_str("`>`"),
            Tok::Implies => f.write_str("`->`"),
            Tok::Iff => f.write_str("`<->`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut out = Vec::new();
    let bytes = text.as_bytes();
    let mut chars = text.char_indices().peekable();
    while let Some((at, c)) = chars.next() {
        let tok = match c {
            c if c.is_whitespace() => continue,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '~' | '¬' => Tok::Not,
            '&' | '∧' => Tok::And,
            '|' | '∨' => Tok::Or,
            '>' => Tok::Cond,
            '→' => Tok::Implies,
            '↔' => Tok::Iff,
            '□' => Tok::Box,
            'B' => Tok::Bel,
            '[' if bytes.get(at + 1) == Some(&b']') => {
                chars.next();
                Tok::Box
            }
            '-' if bytes.get(at + 1) == Some(&b'>') => {
                chars.next();
                Tok::Implies
            }
            '<' if text[at..].starts_with("<->") => {
                chars.next();
                chars.next();
                Tok::Iff
            }
            'a'..='z' => {
                let mut end = at + 1;
                while let Some(&(i, d)) = chars.peek() {
                    if d.is_ascii_lowercase() || d.is_ascii_digit() || d == '_' {
                        chars.next();
                        end = i + 1;
                    } else {
                        break;
                    }
                }
                Tok::Atom(text[at..end].to_string())
            }
            other => {
                return Err(ParseError {
                    offset: at,
                    expected: "a formula token".into(),
                    found: format!("`{other}`"),
                })
            }
        };
        out.push((at, tok));
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let tok = self.toks[self.pos].1.clone();
        if tok != Tok::End {
            self.pos += 1;
        }
        tok
    }

    fn error(&self, expected: &str) -> ParseError {
        ParseError {
            offset: self.offset(),
            expected: expected.into(),
            found: self.peek().to_string(),
        }
    }

    fn iff(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.implication()?;
        while *self.peek() == Tok::Iff {
            self.bump();
            let rhs = self.implication()?;
            lhs = Formula::iff(lhs, rhs);
        }
        Ok(lhs)
    }

    fn implication(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.conditional()?;
        if *self.peek() == Tok::Implies {
            self.bump();
            let rhs = self.implication()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn conditional(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disjunction()?;
        if *self.peek() == Tok::Cond {
            self.bump();
            let rhs = self.disjunction()?;
            if *self.peek() == Tok::Cond {
                return Err(self.error("parentheses around a chained `>`"));
            }
            return Ok(Formula::cond(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.conjunction()?;
        while *self.peek() == Tok::Or {
            self.bump();
            let rhs = self.conjunction()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            let rhs = self.unary()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Tok::Not => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Tok::Bel => {
                self.bump();
                Ok(Formula::bel(self.unary()?))
            }
            Tok::Box => {
                self.bump();
                Ok(Formula::boxed(self.unary()?))
            }
            Tok::Atom(_) => match self.bump() {
                Tok::Atom(a) => Ok(Formula::Atom(a)),
                _ => unreachable!(),
            },
            Tok::LParen => {
                self.bump();
                let inner = self.iff()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.error("`)`"));
                }
                self.bump();
                Ok(inner)
            }
            _ => Err(self.error("an atom, `~`, `B`, `[]` or `(`")),
        }
    }
}

/// Parses the surface syntax without enforcing the language's operand
/// restrictions. The result may classify as ill-formed.
pub fn parse_unchecked(text: &str) -> Result<Formula, ParseError> {
    let mut parser = Parser {
        toks: tokenize(text)?,
        pos: 0,
    };
    let f = parser.iff()?;
    if *parser.peek() != Tok::End {
        return Err(parser.error("an operator or end of input"));
    }
    Ok(f)
}

/// Parses a formula and rejects anything outside the stratified language.
pub fn parse(text: &str) -> Result<Formula, FormulaError> {
    let f = parse_unchecked(text)?;
    if let Some(err) = stratification_error(&f) {
        return Err(err.into());
    }
    Ok(f)
}

impl std::str::FromStr for Formula {
    type Err = FormulaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

// Binding strength used by the printer; higher binds tighter.
const IFF: u8 = 1;
const IMPLIES: u8 = 2;
const COND: u8 = 3;
const OR: u8 = 4;
const AND: u8 = 5;
const PREFIX: u8 = 6;
const ATOM: u8 = 7;

fn strength(f: &Formula) -> u8 {
    match f {
        Formula::Iff(..) => IFF,
        Formula::Implies(..) => IMPLIES,
        Formula::Cond(..) => COND,
        Formula::Or(..) => OR,
        Formula::And(..) => AND,
        Formula::Not(_) | Formula::Bel(_) | Formula::Box(_) => PREFIX,
        Formula::Atom(_) => ATOM,
    }
}

fn write_at(out: &mut fmt::Formatter<'_>, f: &Formula, min: u8) -> fmt::Result {
    if strength(f) < min {
        out.write_str("(")?;
        write_formula(out, f)?;
        out.write_str(")")
    } else {
        write_formula(out, f)
    }
}

fn write_binary(
    out: &mut fmt::Formatter<'_>,
    lhs: &Formula,
    op: &str,
    rhs: &Formula,
    (lmin, rmin): (u8, u8),
) -> fmt::Result {
    write_at(out, lhs, lmin)?;
    write!(out, " {op} ")?;
    write_at(out, rhs, rmin)
}

fn write_formula(out: &mut fmt::Formatter<'_>, f: &Formula) -> fmt::Result {
    match f {
        Formula::Atom(a) => out.write_str(a),
        Formula::Not(g) => {
            out.write_str("~")?;
            write_at(out, g, PREFIX)
        }
        Formula::Bel(g) => {
            out.write_str("B")?;
            if matches!(**g, Formula::Atom(_)) {
                out.write_str(" ")?;
            }
            write_at(out, g, PREFIX)
        }
        Formula::Box(g) => {
            out.write_str("[]")?;
            write_at(out, g, PREFIX)
        }
        Formula::And(g, h) => write_binary(out, g, "&", h, (AND, AND + 1)),
        Formula::Or(g, h) => write_binary(out, g, "|", h, (OR, OR + 1)),
        Formula::Cond(g, h) => write_binary(out, g, ">", h, (COND + 1, COND + 1)),
        Formula::Implies(g, h) => write_binary(out, g, "->", h, (IMPLIES + 1, IMPLIES)),
        Formula::Iff(g, h) => write_binary(out, g, "<->", h, (IFF, IFF + 1)),
    }
}

/// Prints with minimal parentheses; `parse(&f.to_string())` rebuilds `f`.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_formula(f, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{classify, StratificationClause, SyntacticClass};
    use proptest::prelude::*;

    fn atom(a: &str) -> Formula {
        Formula::atom(a)
    }

    #[test]
    fn parses_belief_of_conditional() {
        assert_eq!(
            parse("B(p > p)").unwrap(),
            Formula::bel(Formula::cond(atom("p"), atom("p")))
        );
    }

    #[test]
    fn parses_a3_instance() {
        let expected = Formula::implies(
            Formula::and(
                Formula::not(Formula::boxed(Formula::not(atom("p")))),
                Formula::bel(Formula::cond(atom("p"), atom("q"))),
            ),
            Formula::bel(Formula::implies(atom("p"), atom("q"))),
        );
        assert_eq!(parse("~[]~p & B(p > q) -> B(p -> q)").unwrap(), expected);
        assert_eq!(parse("¬□¬p ∧ B(p > q) → B(p → q)").unwrap(), expected);
    }

    #[test]
    fn excluded_nestings_are_stratification_errors() {
        for text in ["p>(q>r)", "B(Bp->p)", "B []p", "[](p>q)"] {
            match parse(text) {
                Err(FormulaError::Stratification(_)) => {}
                other => panic!("{text}: {other:?}"),
            }
        }
    }

    #[test]
    fn belief_prefix_binds_tightest() {
        // `B p > q` is `(B p) > q`, which the language rejects.
        let err = parse("B p > q").unwrap_err();
        match err {
            FormulaError::Stratification(e) => {
                assert_eq!(e.clause, StratificationClause::ConditionalAntecedent);
                assert_eq!(e.operand_class, SyntacticClass::PhiB);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn chained_conditional_needs_parentheses() {
        let err = parse("p > q > r").unwrap_err();
        match err {
            FormulaError::Parse(e) => {
                assert_eq!(e.offset, 6);
                assert_eq!(e.found, "`>`");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn precedence_table() {
        assert_eq!(
            parse("p & q | r").unwrap(),
            Formula::or(Formula::and(atom("p"), atom("q")), atom("r"))
        );
        assert_eq!(
            parse("p | q > r -> s").unwrap(),
            Formula::implies(Formula::cond(Formula::or(atom("p"), atom("q")), atom("r")), atom("s"))
        );
        assert_eq!(
            parse("p -> q -> r").unwrap(),
            Formula::implies(atom("p"), Formula::implies(atom("q"), atom("r")))
        );
        assert_eq!(
            parse("p <-> q <-> r").unwrap(),
            Formula::iff(Formula::iff(atom("p"), atom("q")), atom("r"))
        );
        assert_eq!(
            parse("~p & q").unwrap(),
            Formula::and(Formula::not(atom("p")), atom("q"))
        );
    }

    #[test]
    fn parse_errors_carry_offsets() {
        let err = parse_unchecked("p & ").unwrap_err();
        assert_eq!(err.offset, 4);
        assert_eq!(err.found, "end of input");

        let err = parse_unchecked("p $ q").unwrap_err();
        assert_eq!(err.offset, 2);
        assert_eq!(err.found, "`$`");

        let err = parse_unchecked("(p | q").unwrap_err();
        assert_eq!(err.offset, 6);
        assert_eq!(err.expected, "`)`");

        let err = parse_unchecked("p q").unwrap_err();
        assert_eq!(err.offset, 2);
        assert_eq!(err.found, "atom `q`");

        assert!(parse_unchecked("P").is_err());
        assert!(parse_unchecked("").is_err());
    }

    #[test]
    fn prints_with_minimal_parentheses() {
        assert_eq!(Formula::bel(Formula::cond(atom("p"), atom("p"))).to_string(), "B(p > p)");
        assert_eq!(
            Formula::implies(Formula::and(atom("p"), atom("q")), atom("r")).to_string(),
            "p & q -> r"
        );
        assert_eq!(
            Formula::cond(atom("p"), Formula::implies(atom("q"), atom("r"))).to_string(),
            "p > (q -> r)"
        );
        assert_eq!(Formula::bel(atom("p")).to_string(), "B p");
        assert_eq!(
            Formula::not(Formula::bel(Formula::not(atom("p")))).to_string(),
            "~B~p"
        );
        assert_eq!(
            Formula::and(atom("p"), Formula::and(atom("q"), atom("r"))).to_string(),
            "p & (q & r)"
        );
    }

    /// Formulas of the stratified language, built layer by layer.
    pub(crate) fn wellformed_formula() -> impl Strategy<Value = Formula> {
        let boolean = crate::formula::tests::boolean_formula(&["p", "q", "r", "s1"]);
        let cond = (boolean.clone(), boolean.clone()).prop_map(|(f, g)| Formula::cond(f, g));
        let layer1 = prop_oneof![boolean.clone(), cond].prop_recursive(2, 8, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(Formula::not),
                (inner.clone(), inner.clone()).prop_map(|(f, g)| Formula::and(f, g)),
                (inner.clone(), inner).prop_map(|(f, g)| Formula::or(f, g)),
            ]
        });
        let leaf = prop_oneof![
            layer1.clone(),
            layer1.prop_map(Formula::bel),
            boolean.prop_map(Formula::boxed),
        ];
        leaf.prop_recursive(2, 8, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(Formula::not),
                (inner.clone(), inner.clone()).prop_map(|(f, g)| Formula::implies(f, g)),
                (inner.clone(), inner).prop_map(|(f, g)| Formula::iff(f, g)),
            ]
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn print_parse_round_trip(f in wellformed_formula()) {
            prop_assert!(classify(&f).is_wellformed());
            let printed = f.to_string();
            prop_assert_eq!(parse(&printed).unwrap(), f);
        }
    }

    proptest! {
        #[test]
        fn accepted_strings_are_wellformed(text in "[pq~&|>()B \\[\\]-]{1,16}") {
            if let Ok(f) = parse(&text) {
                prop_assert!(classify(&f).is_wellformed());
            }
        }
    }
}

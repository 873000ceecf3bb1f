use std::fmt::{self, Write};

use super::Formula;

// Binding levels, loosest first.
const IMP: u8 = 1;
const OR: u8 = 2;
const AND: u8 = 3;
const PREFIX: u8 = 4;

fn level(f: &Formula) -> u8 {
    match f {
        Formula::Imp(a, b) if **b == Formula::Bot && **a != Formula::Bot => PREFIX,
        Formula::Imp(..) => IMP,
        Formula::Or(..) => OR,
        Formula::And(..) => AND,
        _ => PREFIX,
    }
}

/// Prints with the fewest parentheses that still parse back to `f`.
///
/// `a -> bot` prints as `~a`, except that `bot -> bot` keeps its long form.
pub(super) fn write_formula<W: Write>(out: &mut W, f: &Formula) -> fmt::Result {
    match f {
        Formula::Bot => out.write_str("bot"),
        Formula::Atom(v) => write!(out, "{v}"),
        Formula::Imp(a, b) if **b == Formula::Bot && **a != Formula::Bot => {
            out.write_char('~')?;
            operand(out, a, PREFIX)
        }
        Formula::Imp(a, b) => {
            operand(out, a, IMP + 1)?;
            out.write_str(" -> ")?;
            operand(out, b, IMP)
        }
        Formula::Or(a, b) => {
            operand(out, a, OR)?;
            out.write_str(" \\/ ")?;
            operand(out, b, OR + 1)
        }
        Formula::And(a, b) => {
            operand(out, a, AND)?;
            out.write_str(" /\\ ")?;
            operand(out, b, AND + 1)
        }
        Formula::Box(a) => {
            out.write_str("[]")?;
            operand(out, a, PREFIX)
        }
    }
}

fn operand<W: Write>(out: &mut W, f: &Formula, min: u8) -> fmt::Result {
    if level(f) < min {
        out.write_char('(')?;
        write_formula(out, f)?;
        out.write_char(')')
    } else {
        write_formula(out, f)
    }
}

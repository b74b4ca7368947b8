//! Bundle-expression parsing.
//!
//! Grammar: `O(m)` | `S(m)` | `Sym^l S(m)` | `Sym^l S^v(m)`, with `m` a
//! (possibly negative) integer and `l` a non-negative integer.  `S^v(m)` is
//! also accepted as shorthand for `Sym^1 S^v(m)`.  Every expression
//! normalizes to a unique [`SBundle`]: duals are rewritten through
//! `Sym^l S^v ≅ Sym^l S (l)`.

use pfwin_core::weights::{dual_to_s_form, SBundle};
use pfwin_core::Error;

/// Parse a bundle expression into its normalized `S_{l,m}` form.
pub fn parse_bundle(input: &str) -> Result<SBundle, Error> {
    let compact: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = |msg: &str| {
        Err(Error::InvalidInput(format!(
            "cannot parse bundle expression {input:?}: {msg}; expected \
             O(m), S(m), Sym^l S(m), or Sym^l S^v(m)"
        )))
    };

    let (l, dual, rest) = if let Some(rest) = compact.strip_prefix("O(") {
        (0u32, false, rest)
    } else if let Some(rest) = compact.strip_prefix("S^v(") {
        (1u32, true, rest)
    } else if let Some(rest) = compact.strip_prefix("S(") {
        (1u32, false, rest)
    } else if let Some(rest) = compact.strip_prefix("Sym^") {
        let digits: String = rest.chars().take_while(|c| c.is_ascii_digit()).collect();
        if digits.is_empty() {
            return bad("the symmetric power needs a non-negative integer exponent");
        }
        let l: u32 = match digits.parse() {
            Ok(l) => l,
            Err(_) => return bad("symmetric-power exponent out of range"),
        };
        let rest = &rest[digits.len()..];
        if let Some(rest) = rest.strip_prefix("S^v(") {
            (l, true, rest)
        } else if let Some(rest) = rest.strip_prefix("S(") {
            (l, false, rest)
        } else {
            return bad("expected `S(` or `S^v(` after the symmetric power");
        }
    } else {
        return bad("unknown bundle symbol");
    };

    let Some(twist) = rest.strip_suffix(')') else {
        return bad("missing closing parenthesis");
    };
    let m: i64 = match twist.parse() {
        Ok(m) => m,
        Err(_) => return bad("the twist must be an integer"),
    };

    Ok(if dual { dual_to_s_form(l, m) } else { SBundle::new(l, m) })
}

/// Parse a window tuple given as three comma-separated integers.
pub fn parse_tuple(input: &str) -> Result<[i64; 3], Error> {
    let parts: Vec<&str> = input.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(Error::InvalidInput(format!(
            "window tuple must be three comma-separated integers, got {input:?}"
        )));
    }
    let mut m = [0i64; 3];
    for (slot, part) in m.iter_mut().zip(&parts) {
        *slot = part.parse().map_err(|_| {
            Error::InvalidInput(format!("not an integer in window tuple: {part:?}"))
        })?;
    }
    Ok(m)
}

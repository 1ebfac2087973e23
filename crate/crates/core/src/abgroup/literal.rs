//! Parsing of the `r;d1,d2,...` group literal.

use num_bigint::BigInt;
use num_traits::Signed;

use crate::error::{Error, Result};

/// Parses `r;d1,d2,...` into `(r, [d1, d2, ...])`.
pub(crate) fn parse_group_literal(s: &str) -> Result<(usize, Vec<BigInt>)> {
    let s = s.trim();
    let (rank, factors) = s
        .split_once(';')
        .ok_or_else(|| Error::Parse(format!("group literal {s:?} lacks ';'")))?;
    let rank: usize = rank
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad free rank in group literal {s:?}")))?;
    let mut out = Vec::new();
    for part in factors.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let d: BigInt = part
            .parse()
            .map_err(|_| Error::Parse(format!("bad cyclic order {part:?} in {s:?}")))?;
        if d.is_negative() {
            return Err(Error::Parse(format!("negative cyclic order in {s:?}")));
        }
        out.push(d);
    }
    Ok((rank, out))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_examples() {
        assert_eq!(parse_group_literal("0;4").unwrap(), (0, vec![BigInt::from(4)]));
        assert_eq!(parse_group_literal("2;").unwrap(), (2, vec![]));
        assert_eq!(
            parse_group_literal(" 1 ; 2, 6 ").unwrap(),
            (1, vec![BigInt::from(2), BigInt::from(6)])
        );
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["4", "x;2", "0;a", "0;-3", "-1;"] {
            assert!(parse_group_literal(bad).is_err(), "{bad}");
        }
    }
}

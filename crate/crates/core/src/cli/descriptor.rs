use crate::chevalley::Component;
use crate::error::{Error, Result};
use crate::roots::{Series, SimpleType};

fn usage(position: usize, message: impl Into<String>) -> Error {
    Error::Usage {
        position,
        message: message.into(),
    }
}

/// Parses `component ("+" component)*` where a component is a series letter
/// followed by a rank, or `T` followed by a positive torus dimension.
/// Letters are case-insensitive; positions in errors are 0-based byte offsets.
pub fn parse_descriptor(s: &str) -> Result<Vec<Component>> {
    if s.trim().is_empty() {
        return Err(usage(0, "empty algebra descriptor"));
    }
    let mut out = Vec::new();
    let mut pos = 0;
    for part in s.split('+') {
        out.push(parse_component(part, pos)?);
        pos += part.len() + 1;
    }
    Ok(out)
}

fn parse_component(part: &str, start: usize) -> Result<Component> {
    let mut chars = part.chars();
    let letter = match chars.next() {
        Some(c) => c,
        None => return Err(usage(start, "missing component")),
    };
    let digits = chars.as_str();
    if digits.is_empty() {
        return Err(usage(start + letter.len_utf8(), format!("missing rank after `{letter}`")));
    }
    if let Some((i, c)) = digits.char_indices().find(|(_, c)| !c.is_ascii_digit()) {
        return Err(usage(start + letter.len_utf8() + i, format!("unexpected character `{c}`")));
    }
    let n: usize = digits
        .parse()
        .map_err(|_| usage(start + 1, format!("rank `{digits}` out of range")))?;
    if letter.eq_ignore_ascii_case(&'t') {
        if n == 0 {
            return Err(usage(start + 1, "torus dimension must be positive"));
        }
        return Ok(Component::Torus(n));
    }
    let series =
        Series::from_letter(letter).ok_or_else(|| usage(start, format!("unknown series `{letter}`")))?;
    SimpleType::new(series, n)
        .map(Component::Simple)
        .map_err(|_| usage(start + 1, format!("{}{n} is not a simple type", series.letter())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_sums_and_tori() {
        let a3 = Component::Simple(SimpleType::new(Series::A, 3).unwrap());
        assert_eq!(parse_descriptor("A3+T1").unwrap(), vec![a3, Component::Torus(1)]);
        assert_eq!(parse_descriptor("a3+t1").unwrap(), vec![a3, Component::Torus(1)]);
        assert_eq!(parse_descriptor("A1+A1+T2").unwrap().len(), 3);
    }

    #[test]
    fn reports_positions() {
        let pos = |s: &str| match parse_descriptor(s) {
            Err(Error::Usage { position, .. }) => position,
            other => panic!("{s}: {other:?}"),
        };
        assert_eq!(pos("H5"), 0);
        assert_eq!(pos("A2+X1"), 3);
        assert_eq!(pos("A2+"), 3);
        assert_eq!(pos("A2+T0"), 4);
        assert_eq!(pos("E5"), 1);
        assert_eq!(pos("A2x"), 2);
        assert_eq!(pos(""), 0);
    }
}

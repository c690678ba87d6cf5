use super::FiniteGroup;
use crate::{Error, Result};

const SUPERSCRIPTS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];

impl FiniteGroup {
    /// Evaluate a word such as `yx^2`, `σ²τj`, `x^-1` or `1` in the named generators.
    pub fn eval_word(&self, word: &str) -> Result<usize> {
        let chars: Vec<char> = word.chars().filter(|c| !c.is_whitespace() && *c != '*' && *c != '·').collect();
        if chars.is_empty() || chars == ['1'] || chars == ['e'] {
            return Ok(0);
        }
        let mut acc = 0usize;
        let mut i = 0;
        while i < chars.len() {
            let rest: String = chars[i..].iter().collect();
            let (gi, name_len) = self
                .generator_names()
                .iter()
                .enumerate()
                .filter(|(_, n)| rest.starts_with(n.as_str()))
                .map(|(k, n)| (k, n.chars().count()))
                .max_by_key(|&(_, l)| l)
                .ok_or_else(|| Error::Parse(format!("unknown generator at '{rest}' in '{word}'")))?;
            i += name_len;
            let (exp, used) = parse_exponent(&chars[i..])?;
            i += used;
            let g = self.generators()[gi];
            acc = self.mul(acc, self.pow(g, exp));
        }
        Ok(acc)
    }
}

/// Optional `^k`, `^-k`, `^{k}` or superscript exponent; returns `(k, chars consumed)`.
pub(crate) fn parse_exponent(chars: &[char]) -> Result<(i64, usize)> {
    let mut i = 0;
    let mut neg = false;
    let mut digits = String::new();
    if chars.first() == Some(&'^') {
        i += 1;
        let braced = chars.get(i) == Some(&'{');
        if braced {
            i += 1;
        }
        if matches!(chars.get(i), Some('-') | Some('−')) {
            neg = true;
            i += 1;
        }
        while let Some(c) = chars.get(i).filter(|c| c.is_ascii_digit()) {
            digits.push(*c);
            i += 1;
        }
        if braced {
            if chars.get(i) != Some(&'}') {
                return Err(Error::Parse("unclosed exponent brace".into()));
            }
            i += 1;
        }
        if digits.is_empty() {
            return Err(Error::Parse("missing exponent after ^".into()));
        }
    } else {
        if chars.first() == Some(&'⁻') {
            neg = true;
            i += 1;
        }
        while let Some(d) = chars.get(i).and_then(|c| SUPERSCRIPTS.iter().position(|s| s == c)) {
            digits.push(char::from(b'0' + d as u8));
            i += 1;
        }
        if digits.is_empty() {
            return Ok((1, if neg { return Err(Error::Parse("dangling ⁻".into())) } else { 0 }));
        }
    }
    let k: i64 = digits
        .parse()
        .map_err(|_| Error::Parse(format!("bad exponent {digits}")))?;
    Ok((if neg { -k } else { k }, i))
}

#[cfg(test)]
mod tests {
    use crate::group::{dihedral, z2_times_s3};

    #[test]
    fn words_evaluate() {
        let g = z2_times_s3().unwrap();
        let s = g.eval_word("σ").unwrap();
        assert_eq!(g.eval_word("σ²").unwrap(), g.mul(s, s));
        assert_eq!(g.eval_word("σ^2").unwrap(), g.mul(s, s));
        assert_eq!(g.eval_word("σ^-1").unwrap(), g.inv(s));
        assert_eq!(g.eval_word("σ⁻¹").unwrap(), g.inv(s));
        assert_eq!(g.eval_word("1").unwrap(), 0);
        let st = g.eval_word("στ").unwrap();
        assert_eq!(g.label(st), "στ");
        assert!(g.eval_word("q").is_err());
        let d = dihedral(12).unwrap();
        for i in d.elements() {
            assert_eq!(d.eval_word(d.label(i)).unwrap(), i);
        }
    }
}

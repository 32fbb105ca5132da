use std::fmt;

use serde::{Deserialize, Serialize};

use super::ActionError;

/// A letter: generator `i` is `2i`, its formal inverse is `2i + 1`.
pub type Letter = u32;

#[inline]
pub fn inverse_letter(l: Letter) -> Letter {
    l ^ 1
}

/// Ordered generators with printable labels for each generator and its
/// formal inverse.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenSet {
    labels: Vec<String>,
}

impl GenSet {
    /// Generators with inverse labels of the form `x^-1`.
    pub fn simple(names: &[&str]) -> Result<Self, ActionError> {
        GenSet::with_inverses(&names.iter().map(|n| (n.to_string(), format!("{n}^-1"))).collect::<Vec<_>>())
    }

    /// Generators with explicit inverse labels.
    pub fn with_inverses(pairs: &[(String, String)]) -> Result<Self, ActionError> {
        let mut labels = Vec::with_capacity(2 * pairs.len());
        for (a, b) in pairs {
            labels.push(a.clone());
            labels.push(b.clone());
        }
        let mut sorted = labels.clone();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) || labels.iter().any(|l| l.is_empty()) {
            return Err(ActionError::Parse(format!("generator labels must be unique and nonempty: {labels:?}")));
        }
        Ok(GenSet { labels })
    }

    pub fn rank(&self) -> usize {
        self.labels.len() / 2
    }

    /// All letters, generators and inverses, in order.
    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        0..self.labels.len() as Letter
    }

    pub fn label(&self, l: Letter) -> &str {
        &self.labels[l as usize]
    }

    pub fn generator(&self, i: usize) -> Letter {
        2 * i as Letter
    }

    pub fn find(&self, label: &str) -> Option<Letter> {
        self.labels.iter().position(|l| l == label).map(|i| i as Letter)
    }

    /// Parses a word. Tokens are separated by whitespace, `*` or a middle
    /// dot; each token is a label, possibly with a power suffix `^k` (k may
    /// be negative). When every label is one character, tokens may also be
    /// written run together, as in `sas^-1`.
    pub fn parse(&self, text: &str) -> Result<GroupWord, ActionError> {
        let mut out = Vec::new();
        let cleaned = text.replace("\u{207b}\u{00b9}", "^-1").replace(['\u{00b7}', '*'], " ").replace('\u{2212}', "-");
        for token in cleaned.split_whitespace() {
            if (token == "e" || token == "1") && self.find(token).is_none() {
                continue;
            }
            match self.parse_token(token) {
                Some(mut w) => out.append(&mut w),
                None => match self.parse_run(token) {
                    Some(mut w) => out.append(&mut w),
                    None => return Err(ActionError::Parse(format!("unknown token {token:?} in word {text:?}"))),
                },
            }
        }
        Ok(GroupWord(out))
    }

    fn parse_token(&self, token: &str) -> Option<Vec<Letter>> {
        if let Some(l) = self.find(token) {
            return Some(vec![l]);
        }
        let (base, exp) = token.rsplit_once('^')?;
        let l = self.find(base)?;
        let k: i64 = exp.parse().ok()?;
        Some(power_letters(l, k))
    }

    fn parse_run(&self, token: &str) -> Option<Vec<Letter>> {
        if !self.labels.iter().step_by(2).all(|l| l.chars().count() == 1) {
            return None;
        }
        let chars: Vec<char> = token.chars().collect();
        let mut out = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let l = self.find(&chars[i].to_string())?;
            i += 1;
            let mut k = 1i64;
            if i < chars.len() && chars[i] == '^' {
                let start = i + 1;
                let mut end = start;
                if end < chars.len() && chars[end] == '-' {
                    end += 1;
                }
                while end < chars.len() && chars[end].is_ascii_digit() {
                    end += 1;
                }
                k = chars[start..end].iter().collect::<String>().parse().ok()?;
                i = end;
            }
            out.extend(power_letters(l, k));
        }
        Some(out)
    }

    pub fn display(&self, w: &GroupWord) -> String {
        if w.0.is_empty() {
            return "e".into();
        }
        w.0.iter().map(|&l| self.label(l)).collect::<Vec<_>>().join(" ")
    }
}

fn power_letters(l: Letter, k: i64) -> Vec<Letter> {
    let l = if k < 0 { inverse_letter(l) } else { l };
    vec![l; k.unsigned_abs() as usize]
}

/// A word in the generators; the empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupWord(pub Vec<Letter>);

impl GroupWord {
    pub fn identity() -> Self {
        GroupWord(Vec::new())
    }

    pub fn letter(l: Letter) -> Self {
        GroupWord(vec![l])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn concat(&self, o: &GroupWord) -> GroupWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&o.0);
        GroupWord(v)
    }

    pub fn inverse(&self) -> GroupWord {
        GroupWord(self.0.iter().rev().map(|&l| inverse_letter(l)).collect())
    }

    pub fn pow(&self, k: i64) -> GroupWord {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut v = Vec::with_capacity(base.len() * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            v.extend_from_slice(&base.0);
        }
        GroupWord(v)
    }

    /// u w u^-1.
    pub fn conjugate_by(&self, u: &GroupWord) -> GroupWord {
        u.concat(self).concat(&u.inverse())
    }

    /// Free reduction: cancels adjacent inverse pairs.
    pub fn reduced(&self) -> GroupWord {
        let mut out: Vec<Letter> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if out.last() == Some(&inverse_letter(l)) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        GroupWord(out)
    }

    /// Exponent sum of each generator.
    pub fn exponent_sums(&self, rank: usize) -> Vec<i64> {
        let mut s = vec![0i64; rank];
        for &l in &self.0 {
            s[(l / 2) as usize] += if l & 1 == 0 { 1 } else { -1 };
        }
        s
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// All freely reduced words of length at most `max_len`, shortest first
/// and lexicographic within a length.
pub fn reduced_words(gens: &GenSet, max_len: usize) -> Vec<GroupWord> {
    let mut out = vec![GroupWord::identity()];
    let mut layer = vec![GroupWord::identity()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for l in gens.letters() {
                if w.0.last() == Some(&inverse_letter(l)) {
                    continue;
                }
                let mut v = w.0.clone();
                v.push(l);
                next.push(GroupWord(v));
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        let g = GenSet::simple(&["a", "s"]).unwrap();
        let w = g.parse("s a s^-1").unwrap();
        assert_eq!(w.0, vec![2, 0, 3]);
        assert_eq!(g.parse("s\u{00b7}a\u{00b7}s\u{207b}\u{00b9}").unwrap(), w);
        assert_eq!(g.parse("sas^-1").unwrap(), w);
        assert_eq!(g.parse("a^3").unwrap().0, vec![0, 0, 0]);
        assert_eq!(g.parse("").unwrap(), GroupWord::identity());
        assert!(g.parse("b").is_err());
    }

    #[test]
    fn explicit_inverse_labels() {
        let g = GenSet::with_inverses(&[("+1".into(), "-1".into())]).unwrap();
        let w = g.parse("+1 +1 -1").unwrap();
        assert_eq!(w.reduced().0, vec![0]);
        assert_eq!(g.display(&w.inverse()), "+1 -1 -1");
    }

    #[test]
    fn reduced_word_counts() {
        let g = GenSet::simple(&["x", "y"]).unwrap();
        // 1 + 4 + 12 + 36
        assert_eq!(reduced_words(&g, 3).len(), 53);
    }
}

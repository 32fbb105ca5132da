use serde::Serialize;

use crate::action::{GenSet, GroupWord, Letter};
use crate::axis::Factorization;

/// G generated by a subgroup H and one more element g, where conjugation
/// by g acts on H by a substitution, g^n = c lies in H, and the cosets of
/// H are g^0 H, ..., g^(n-1) H.
#[derive(Clone, Debug, Serialize)]
pub struct CyclicExtension {
    pub name: String,
    pub h_gens: GenSet,
    pub g_gens: GenSet,
    /// g y g^-1 for each generator y of H, as a word in H.
    pub conj: Vec<GroupWord>,
    pub n: usize,
    /// g^n as a word in H.
    pub c: GroupWord,
    /// Pairs of H-generators that commute.
    pub commuting: Vec<(usize, usize)>,
    pub central: GroupWord,
}

fn commutator(a: Letter, b: Letter) -> GroupWord {
    GroupWord(vec![a, b, a ^ 1, b ^ 1])
}

/// Writes runs of a letter as powers, e.g. `h^2 k`.
pub fn display_powers(gens: &GenSet, w: &GroupWord) -> String {
    if w.is_empty() {
        return "e".into();
    }
    let mut parts = Vec::new();
    let mut i = 0;
    let ls = w.letters();
    while i < ls.len() {
        let mut j = i;
        while j < ls.len() && ls[j] == ls[i] {
            j += 1;
        }
        let base = gens.label(ls[i] & !1);
        let k = (j - i) as i64 * if ls[i] % 2 == 0 { 1 } else { -1 };
        parts.push(if k == 1 { base.to_string() } else { format!("{base}^{k}") });
        i = j;
    }
    parts.join(" ")
}

impl CyclicExtension {
    pub fn new(
        name: &str,
        h_labels: &[&str],
        conj: &[&str],
        n: usize,
        c: &str,
        commuting: &[(usize, usize)],
        central: &str,
    ) -> Result<Self, crate::action::ActionError> {
        let h_gens = GenSet::simple(h_labels)?;
        let mut g_labels = h_labels.to_vec();
        g_labels.push("g");
        let g_gens = GenSet::simple(&g_labels)?;
        let conj = conj.iter().map(|s| h_gens.parse(s)).collect::<Result<Vec<_>, _>>()?;
        Ok(CyclicExtension {
            name: name.into(),
            c: h_gens.parse(c)?,
            central: h_gens.parse(central)?,
            h_gens,
            g_gens,
            conj,
            n,
            commuting: commuting.to_vec(),
        })
    }

    fn g_letter(&self) -> Letter {
        self.g_gens.generator(self.h_gens.rank())
    }

    /// Applies y -> g y g^-1 `times` times to a word of H.
    pub fn conjugate(&self, w: &GroupWord, times: usize) -> GroupWord {
        let mut cur = w.clone();
        for _ in 0..times {
            let mut next = Vec::new();
            for &l in cur.letters() {
                let img = &self.conj[l as usize / 2];
                if l % 2 == 0 {
                    next.extend_from_slice(img.letters());
                } else {
                    next.extend_from_slice(img.inverse().letters());
                }
            }
            cur = GroupWord(next).reduced();
        }
        cur
    }
}

impl Factorization for CyclicExtension {
    fn index(&self) -> usize {
        self.n
    }

    fn g_gens(&self) -> &GenSet {
        &self.g_gens
    }

    fn h_gens(&self) -> &GenSet {
        &self.h_gens
    }

    fn step(&self, x: usize, i: usize) -> (usize, GroupWord) {
        if x == self.h_gens.rank() {
            return if i + 1 < self.n { (i + 1, GroupWord::identity()) } else { (0, self.c.clone()) };
        }
        let y = GroupWord::letter(self.h_gens.generator(x));
        if i == 0 {
            return (0, y);
        }
        // g^-i y g^i = c^-1 (g^(n-i) y g^-(n-i)) c
        (i, self.c.inverse().concat(&self.conjugate(&y, self.n - i)).concat(&self.c).reduced())
    }

    fn g_relators(&self) -> Vec<(String, GroupWord)> {
        let g = self.g_letter();
        let mut out = Vec::new();
        for (i, img) in self.conj.iter().enumerate() {
            let y = self.h_gens.generator(i);
            let w = GroupWord(vec![g, y, g ^ 1]).concat(&img.inverse());
            out.push((format!("g {} g^-1 = {}", self.h_gens.label(y), display_powers(&self.h_gens, img)), w));
        }
        out.push((format!("g^{} = {}", self.n, display_powers(&self.h_gens, &self.c)), GroupWord::letter(g).pow(self.n as i64).concat(&self.c.inverse())));
        for &(a, b) in &self.commuting {
            let (x, y) = (self.h_gens.generator(a), self.h_gens.generator(b));
            out.push((format!("[{}, {}]", self.h_gens.label(x), self.h_gens.label(y)), commutator(x, y)));
        }
        out
    }

    fn h_relators(&self) -> Vec<(String, GroupWord)> {
        let mut out = Vec::new();
        for &(a, b) in &self.commuting {
            let (x, y) = (self.h_gens.generator(a), self.h_gens.generator(b));
            out.push((format!("[{}, {}]", self.h_gens.label(x), self.h_gens.label(y)), commutator(x, y)));
        }
        for i in 0..self.h_gens.rank() {
            let y = GroupWord::letter(self.h_gens.generator(i));
            let image = self.conjugate(&y, self.n);
            let w = self.c.concat(&y).concat(&self.c.inverse()).concat(&image.inverse());
            let label = self.h_gens.label(y.0[0]);
            out.push((format!("g^{n} {label} g^-{n} = {}", display_powers(&self.h_gens, &image), n = self.n), w));
        }
        out
    }
}

/// G = <h, k, g | g k g^-1 = h k^-1, g^2 = 1, [h, k], h central>, with
/// H = <h, k> of index 2.
pub fn example_swap() -> CyclicExtension {
    CyclicExtension::new("example_i", &["h", "k"], &["h", "h k^-1"], 2, "e", &[(0, 1)], "h").expect("fixed data")
}

/// The same setup with g k g^-1 = h k. Here g^2 = c lies in H, and
/// H = <h, k, c> with h central and c k c^-1 = h^2 k.
pub fn example_shear() -> CyclicExtension {
    CyclicExtension::new("example_ii", &["h", "k", "c"], &["h", "h k", "c"], 2, "c", &[(0, 1), (0, 2)], "h").expect("fixed data")
}

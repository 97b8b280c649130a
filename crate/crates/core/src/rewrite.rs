//! String rewriting for the free product of `n` one-dimensional Grassmann
//! algebras modulo the cyclic regularity relations.
//!
//! Two rule families are generated for each generator `i`:
//!
//! * `SquareZero(i)`: `i i ⇒ 0`
//! * `CyclicCollapse(i)`: `i (i+1) … n 1 … (i−1) i ⇒ i` (length `n + 1`)
//!
//! Every rule shortens the word, so reduction terminates. Zero is absorbing
//! and lives outside [`Word`]: reductions return `Option<Word>` with `None`
//! standing for zero.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// A monomial in the generators, letters are 1-based generator indices.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<usize>);

impl Word {
    pub fn new(letters: Vec<usize>) -> Self {
        Word(letters)
    }

    pub fn unit() -> Self {
        Word(Vec::new())
    }

    pub fn generator(i: usize) -> Self {
        Word(vec![i])
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<usize> {
        self.0.first().copied()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// Renders as juxtaposed generators (`T1 T2`), or `1` for the unit.
    pub fn render(&self, symbol: char) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        self.0
            .iter()
            .map(|l| format!("{symbol}{l}"))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl From<&[usize]> for Word {
    fn from(v: &[usize]) -> Self {
        Word(v.to_vec())
    }
}

impl<const N: usize> From<[usize; N]> for Word {
    fn from(v: [usize; N]) -> Self {
        Word(v.to_vec())
    }
}

/// Length first, then lexicographic.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Grade in ℤ₂: word length mod 2.
pub fn parity(w: &Word) -> u8 {
    (w.len() % 2) as u8
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    SquareZero(usize),
    CyclicCollapse(usize),
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rule::SquareZero(i) => write!(f, "square-zero({i})"),
            Rule::CyclicCollapse(i) => write!(f, "cyclic-collapse({i})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Strategy {
    #[default]
    LeftmostInnermost,
    RightmostInnermost,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RewriteSystem {
    n: usize,
    strategy: Strategy,
}

impl RewriteSystem {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "a rewrite system needs at least one generator");
        RewriteSystem {
            n,
            strategy: Strategy::LeftmostInnermost,
        }
    }

    pub fn with_strategy(self, strategy: Strategy) -> Self {
        RewriteSystem { strategy, ..self }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn strategy(&self) -> Strategy {
        self.strategy
    }

    /// Rules in tie-break order: all square-zero rules before any collapse.
    pub fn rules(&self) -> Vec<Rule> {
        (1..=self.n)
            .map(Rule::SquareZero)
            .chain((1..=self.n).map(Rule::CyclicCollapse))
            .collect()
    }

    pub fn pattern(&self, rule: Rule) -> Word {
        match rule {
            Rule::SquareZero(i) => Word(vec![i, i]),
            Rule::CyclicCollapse(i) => Word(self.cycle_from(i, self.n + 1)),
        }
    }

    pub fn rhs(&self, rule: Rule) -> Option<Word> {
        match rule {
            Rule::SquareZero(_) => None,
            Rule::CyclicCollapse(i) => Some(Word::generator(i)),
        }
    }

    fn cycle_from(&self, i: usize, len: usize) -> Vec<usize> {
        (0..len).map(|k| (i - 1 + k) % self.n + 1).collect()
    }

    pub fn validate(&self, w: &Word) -> Result<()> {
        match w.0.iter().find(|&&l| l == 0 || l > self.n) {
            Some(&letter) => Err(Error::LetterOutOfRange { letter, n: self.n }),
            None => Ok(()),
        }
    }

    /// The rule firing at `pos`, square-zero taking precedence.
    fn rule_at(&self, w: &[usize], pos: usize) -> Option<Rule> {
        let i = w[pos];
        if pos + 1 < w.len() && w[pos + 1] == i {
            return Some(Rule::SquareZero(i));
        }
        let end = pos + self.n + 1;
        if end <= w.len() && (0..=self.n).all(|k| w[pos + k] == (i - 1 + k) % self.n + 1) {
            return Some(Rule::CyclicCollapse(i));
        }
        None
    }

    /// Finds the redex the strategy selects.
    pub fn find_redex(&self, w: &Word) -> Option<(usize, Rule)> {
        let len = w.len();
        let hit = |pos: usize| self.rule_at(&w.0, pos).map(|r| (pos, r));
        match self.strategy {
            Strategy::LeftmostInnermost => (0..len).find_map(hit),
            Strategy::RightmostInnermost => (0..len).rev().find_map(hit),
        }
    }

    /// Rewrites `w` once with `rule` at `pos`. `None` is zero.
    pub fn apply(&self, w: &Word, pos: usize, rule: Rule) -> Option<Word> {
        let pat = self.pattern(rule);
        debug_assert_eq!(&w.0[pos..pos + pat.len()], pat.letters());
        let rhs = self.rhs(rule)?;
        let mut v = Vec::with_capacity(w.len());
        v.extend_from_slice(&w.0[..pos]);
        v.extend_from_slice(rhs.letters());
        v.extend_from_slice(&w.0[pos + pat.len()..]);
        Some(Word(v))
    }

    /// Normal form under the system's strategy. `Ok(None)` is zero.
    pub fn normal_form(&self, w: &Word) -> Result<Option<Word>> {
        self.validate(w)?;
        Ok(self.normal_form_traced(w).0)
    }

    /// Normal form plus the number of rewrite steps taken.
    pub fn normal_form_traced(&self, w: &Word) -> (Option<Word>, usize) {
        let mut cur = w.clone();
        let mut steps = 0;
        while let Some((pos, rule)) = self.find_redex(&cur) {
            steps += 1;
            match self.apply(&cur, pos, rule) {
                Some(next) => cur = next,
                None => return (None, steps),
            }
        }
        (Some(cur), steps)
    }

    pub fn is_normal(&self, w: &Word) -> bool {
        (0..w.len()).all(|pos| self.rule_at(&w.0, pos).is_none())
    }

    /// All normal-form words of length ≤ `max_len`, ordered by (length, lexicographic).
    pub fn enumerate_normal_forms(&self, max_len: usize) -> Vec<Word> {
        let mut out = vec![Word::unit()];
        let mut layer = vec![Word::unit()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &layer {
                for l in 1..=self.n {
                    let mut v = w.0.clone();
                    v.push(l);
                    if self.suffix_is_clean(&v) {
                        next.push(Word(v));
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }

    // Only patterns ending at the last letter can be new when extending a normal word.
    fn suffix_is_clean(&self, v: &[usize]) -> bool {
        let len = v.len();
        if len >= 2 && v[len - 1] == v[len - 2] {
            return false;
        }
        let plen = self.n + 1;
        !(len >= plen && self.rule_at(v, len - plen) == Some(Rule::CyclicCollapse(v[len - plen])))
    }

    /// Enumerates every overlap of every ordered pair of rule patterns and
    /// reports whether the two one-step reducts share a normal form.
    pub fn check_local_confluence(&self) -> ConfluenceReport {
        let rules = self.rules();
        let mut critical_pairs = Vec::new();
        for &r1 in &rules {
            let l1 = self.pattern(r1);
            for &r2 in &rules {
                let l2 = self.pattern(r2);
                // suffix of l1 overlapping a prefix of l2
                for k in 1..l1.len().min(l2.len()) {
                    if l1.0[l1.len() - k..] == l2.0[..k] {
                        let overlap = Word(l1.0.iter().chain(l2.0[k..].iter()).copied().collect());
                        let pos2 = l1.len() - k;
                        critical_pairs.push(self.critical_pair(overlap, (r1, 0), (r2, pos2)));
                    }
                }
                // l2 strictly inside l1, or the same pattern under a different rule
                if l2.len() <= l1.len() {
                    for p in 0..=l1.len() - l2.len() {
                        if r1 == r2 && p == 0 {
                            continue;
                        }
                        if l1.0[p..p + l2.len()] == l2.0[..] {
                            critical_pairs.push(self.critical_pair(l1.clone(), (r1, 0), (r2, p)));
                        }
                    }
                }
            }
        }
        let locally_confluent = critical_pairs.iter().all(|c| c.joinable);
        ConfluenceReport {
            n: self.n,
            critical_pairs,
            locally_confluent,
        }
    }

    fn critical_pair(&self, overlap: Word, a: (Rule, usize), b: (Rule, usize)) -> CriticalPair {
        let left = self.apply(&overlap, a.1, a.0);
        let right = self.apply(&overlap, b.1, b.0);
        let nf = |r: &Option<Word>| r.as_ref().and_then(|w| self.normal_form_traced(w).0);
        let left_nf = nf(&left);
        let right_nf = nf(&right);
        CriticalPair {
            joinable: left_nf == right_nf,
            overlap,
            rules: (a.0, b.0),
            left,
            right,
            left_nf,
            right_nf,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalPair {
    pub overlap: Word,
    pub rules: (Rule, Rule),
    pub left: Option<Word>,
    pub right: Option<Word>,
    pub left_nf: Option<Word>,
    pub right_nf: Option<Word>,
    pub joinable: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfluenceReport {
    pub n: usize,
    pub critical_pairs: Vec<CriticalPair>,
    pub locally_confluent: bool,
}

impl ConfluenceReport {
    pub fn unjoinable(&self) -> impl Iterator<Item = &CriticalPair> {
        self.critical_pairs.iter().filter(|c| !c.joinable)
    }

    /// One line per critical pair, stable order.
    pub fn to_table(&self) -> String {
        let show = |w: &Option<Word>| match w {
            Some(w) => w.render('T'),
            None => "0".to_string(),
        };
        let mut s = format!("# local confluence, n = {}\n", self.n);
        s.push_str("overlap | rules | left -> nf | right -> nf | joinable\n");
        for c in &self.critical_pairs {
            s.push_str(&format!(
                "{} | {}, {} | {} -> {} | {} -> {} | {}\n",
                c.overlap.render('T'),
                c.rules.0,
                c.rules.1,
                show(&c.left),
                show(&c.left_nf),
                show(&c.right),
                show(&c.right_nf),
                c.joinable
            ));
        }
        s.push_str(&format!(
            "locally confluent: {} (critical pairs: {}, not joinable: {})\n",
            self.locally_confluent,
            self.critical_pairs.len(),
            self.unjoinable().count()
        ));
        s
    }
}

//! Single-letter distortion models, distortion budgets, and distortion-ball
//! enumeration.
//!
//! All distortion values are exact rationals: a model stores integer
//! numerators over one shared positive denominator, and every comparison
//! against a budget is an integer comparison. Boundary cases (distortion
//! exactly equal to the budget) therefore resolve identically everywhere.

use crate::alphabet::{Sequence, Sym};
use crate::error::{Error, Result};
use crate::Limits;
use num_rational::Ratio;

/// Exact nonnegative rational used for distortion values.
pub type Rat = Ratio<u128>;

/// An alpha x beta matrix of per-letter distortions, stored as integer
/// numerators over a shared positive denominator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistortionModel {
    alpha: u16,
    beta: u16,
    den: u64,
    num: Vec<u64>,
}

impl DistortionModel {
    pub fn new(alpha: u16, beta: u16, den: u64, num: Vec<u64>) -> Result<Self> {
        if alpha == 0 || beta == 0 {
            return Err(Error::InvalidParameter("distortion matrix dimensions must be >= 1".into()));
        }
        if den == 0 {
            return Err(Error::InvalidParameter("distortion denominator must be positive".into()));
        }
        if num.len() != alpha as usize * beta as usize {
            return Err(Error::InvalidParameter(format!(
                "distortion matrix needs {} entries, got {}",
                alpha as usize * beta as usize,
                num.len()
            )));
        }
        Ok(Self { alpha, beta, den, num })
    }

    /// Hamming distortion on a square alphabet: 0 on the diagonal, 1 off it.
    pub fn hamming(size: u16) -> Result<Self> {
        let n = size as usize;
        let mut num = vec![1u64; n * n];
        for i in 0..n {
            num[i * n + i] = 0;
        }
        Self::new(size, size, 1, num)
    }

    /// Absolute-difference distortion |i - j| on integer-indexed alphabets.
    pub fn absolute(alpha: u16, beta: u16) -> Result<Self> {
        let mut num = Vec::with_capacity(alpha as usize * beta as usize);
        for i in 0..alpha as i64 {
            for j in 0..beta as i64 {
                num.push((i - j).unsigned_abs());
            }
        }
        Self::new(alpha, beta, 1, num)
    }

    /// Parses the text format: a first line `alpha beta denom`, then alpha
    /// rows of beta whitespace-separated integer numerators.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut fields = text.split_whitespace();
        let mut next = |what: &str| {
            fields
                .next()
                .ok_or_else(|| Error::Format(format!("distortion file missing {what}")))
        };
        let alpha: u16 = next("alpha")?
            .parse()
            .map_err(|_| Error::Format("bad alpha in distortion file".into()))?;
        let beta: u16 = next("beta")?
            .parse()
            .map_err(|_| Error::Format("bad beta in distortion file".into()))?;
        let den: u64 = next("denom")?
            .parse()
            .map_err(|_| Error::Format("bad denominator in distortion file".into()))?;
        let mut num = Vec::with_capacity(alpha as usize * beta as usize);
        for _ in 0..alpha as usize * beta as usize {
            let v: u64 = next("matrix entry")?
                .parse()
                .map_err(|_| Error::Format("bad matrix entry in distortion file".into()))?;
            num.push(v);
        }
        if fields.next().is_some() {
            return Err(Error::Format("trailing data in distortion file".into()));
        }
        Self::new(alpha, beta, den, num).map_err(|e| Error::Format(e.to_string()))
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {} {}\n", self.alpha, self.beta, self.den);
        for a in 0..self.alpha as usize {
            let row: Vec<String> = (0..self.beta as usize)
                .map(|b| self.num[a * self.beta as usize + b].to_string())
                .collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn alpha(&self) -> u16 {
        self.alpha
    }

    pub fn beta(&self) -> u16 {
        self.beta
    }

    pub fn denominator(&self) -> u64 {
        self.den
    }

    /// Numerator of d(a, b) over the shared denominator.
    pub fn entry_num(&self, a: Sym, b: Sym) -> u64 {
        self.num[a as usize * self.beta as usize + b as usize]
    }

    pub fn entry(&self, a: Sym, b: Sym) -> Rat {
        Rat::new(self.entry_num(a, b) as u128, self.den as u128)
    }

    /// Smallest numerator achievable in row `a`.
    fn min_row_num(&self, a: Sym) -> u64 {
        let row = &self.num[a as usize * self.beta as usize..(a as usize + 1) * self.beta as usize];
        *row.iter().min().unwrap()
    }

    /// True when the model can charge zero for reproducing each source symbol
    /// by itself (square matrix with a zero diagonal).
    pub fn is_faithful_on_diagonal(&self) -> bool {
        self.alpha == self.beta && (0..self.alpha).all(|i| self.entry_num(i, i) == 0)
    }
}

/// Per-letter distortion allowance `D` and block length `k`; the exact block
/// budget is `k * D`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    num: u64,
    den: u64,
    k: usize,
}

impl Budget {
    pub fn new(num: u64, den: u64, k: usize) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidParameter("distortion budget denominator must be positive".into()));
        }
        if k == 0 {
            return Err(Error::InvalidParameter("block length must be positive".into()));
        }
        Ok(Self { num, den, k })
    }

    pub fn per_letter(&self) -> Rat {
        Rat::new(self.num as u128, self.den as u128)
    }

    pub fn block_budget(&self) -> Rat {
        Rat::new(self.k as u128 * self.num as u128, self.den as u128)
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn block_len(&self) -> usize {
        self.k
    }

    /// Block budget scaled to the comparison units used by ball search:
    /// `k * num * model_denominator`. A total distortion with numerator `s`
    /// (over the model denominator) fits the budget iff
    /// `s * den <= scaled_block_budget`.
    fn scaled_block_budget(&self, model: &DistortionModel) -> Result<u128> {
        (self.k as u128)
            .checked_mul(self.num as u128)
            .and_then(|v| v.checked_mul(model.den as u128))
            .ok_or_else(|| Error::InvalidParameter("distortion budget overflows".into()))
    }
}

fn check_pair(x: &Sequence, y: &Sequence, model: &DistortionModel) -> Result<()> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch { left: x.len(), right: y.len() });
    }
    if x.alphabet().size() != model.alpha() {
        return Err(Error::AlphabetMismatch { expected: model.alpha(), found: x.alphabet().size() });
    }
    if y.alphabet().size() != model.beta() {
        return Err(Error::AlphabetMismatch { expected: model.beta(), found: y.alphabet().size() });
    }
    Ok(())
}

/// Sum of per-letter distortion numerators for two equal-length slices.
pub fn distortion_num(x: &[Sym], y: &[Sym], model: &DistortionModel) -> u128 {
    debug_assert_eq!(x.len(), y.len());
    x.iter().zip(y).map(|(&a, &b)| model.entry_num(a, b) as u128).sum()
}

/// Additive distortion between two sequences, as an exact rational.
pub fn distortion(x: &Sequence, y: &Sequence, model: &DistortionModel) -> Result<Rat> {
    check_pair(x, y, model)?;
    Ok(Rat::new(distortion_num(x.symbols(), y.symbols(), model), model.den as u128))
}

/// True iff `d(x, y) <= k * D` exactly.
pub fn ball_contains(
    x: &Sequence,
    y: &Sequence,
    model: &DistortionModel,
    budget: &Budget,
) -> Result<bool> {
    check_pair(x, y, model)?;
    if x.len() != budget.block_len() {
        return Err(Error::LengthMismatch { left: x.len(), right: budget.block_len() });
    }
    Ok(slice_within_budget(x.symbols(), y.symbols(), model, budget)?)
}

/// Budget test on raw slices, used by hot paths that already validated shapes.
pub fn slice_within_budget(
    x: &[Sym],
    y: &[Sym],
    model: &DistortionModel,
    budget: &Budget,
) -> Result<bool> {
    let s = distortion_num(x, y, model);
    let scaled = budget.scaled_block_budget(model)?;
    Ok(s.saturating_mul(budget.den as u128) <= scaled)
}

/// Depth-first enumeration of the distortion ball around `x`, in lexicographic
/// order of reproduction symbol indices.
///
/// A prefix is abandoned as soon as its accumulated distortion plus the sum of
/// per-position minimum distortions over the remaining suffix exceeds the block
/// budget. The iterator counts every candidate prefix extension against
/// `Limits::ball_nodes` and yields an error when the ceiling is hit.
pub struct BallIter<'a> {
    x: &'a [Sym],
    model: &'a DistortionModel,
    beta: u16,
    k: usize,
    budget_scaled: u128,
    den: u128,
    suffix_min: Vec<u128>,
    prefix: Vec<Sym>,
    acc: Vec<u128>,
    next_try: Vec<Sym>,
    depth: usize,
    nodes: u64,
    limit: u64,
    done: bool,
}

impl<'a> BallIter<'a> {
    pub fn new(
        x: &'a [Sym],
        model: &'a DistortionModel,
        budget: &Budget,
        limits: &Limits,
    ) -> Result<Self> {
        if x.len() != budget.block_len() {
            return Err(Error::LengthMismatch { left: x.len(), right: budget.block_len() });
        }
        for &s in x {
            if s >= model.alpha() {
                return Err(Error::SymbolOutOfRange { symbol: s, alphabet: model.alpha() });
            }
        }
        let k = x.len();
        let den = budget.den as u128;
        // suffix_min[i] = sum over positions >= i of the cheapest reproduction,
        // in budget-scaled units.
        let mut suffix_min = vec![0u128; k + 1];
        for i in (0..k).rev() {
            suffix_min[i] = suffix_min[i + 1] + model.min_row_num(x[i]) as u128 * den;
        }
        Ok(Self {
            x,
            model,
            beta: model.beta(),
            k,
            budget_scaled: budget.scaled_block_budget(model)?,
            den,
            suffix_min,
            prefix: Vec::with_capacity(k),
            acc: vec![0; k + 1],
            next_try: vec![0; k + 1],
            depth: 0,
            nodes: 0,
            limit: limits.ball_nodes,
            done: false,
        })
    }

    fn retreat(&mut self) {
        if self.depth == 0 {
            self.done = true;
        } else {
            self.prefix.pop();
            self.depth -= 1;
        }
    }
}

impl Iterator for BallIter<'_> {
    type Item = Result<Vec<Sym>>;

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            if self.done {
                return None;
            }
            if self.depth == self.k {
                let member = self.prefix.clone();
                self.retreat();
                return Some(Ok(member));
            }
            let d = self.depth;
            let mut advanced = false;
            while self.next_try[d] < self.beta {
                let s = self.next_try[d];
                self.next_try[d] += 1;
                self.nodes += 1;
                if self.nodes > self.limit {
                    self.done = true;
                    return Some(Err(Error::EnumerationLimit { limit: self.limit }));
                }
                let nd = self.acc[d] + self.model.entry_num(self.x[d], s) as u128 * self.den;
                if nd + self.suffix_min[d + 1] <= self.budget_scaled {
                    self.prefix.push(s);
                    self.acc[d + 1] = nd;
                    self.depth += 1;
                    self.next_try[d + 1] = 0;
                    advanced = true;
                    break;
                }
            }
            if !advanced {
                self.retreat();
            }
        }
    }
}

/// Collects the whole ball. Convenience wrapper over [`BallIter`].
pub fn ball_members(
    x: &[Sym],
    model: &DistortionModel,
    budget: &Budget,
    limits: &Limits,
) -> Result<Vec<Vec<Sym>>> {
    BallIter::new(x, model, budget, limits)?.collect()
}

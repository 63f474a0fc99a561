//! Finite functions `(n] -> (m]`, permutations and block structures.
//!
//! Everything here is 1-based: the set `(n]` is `{1, ..., n}` and a
//! [`FinFunction`] stores the image of `i` at `values[i - 1]`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// A function `(domain] -> (codomain]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FinFunction {
    codomain: usize,
    values: Vec<usize>,
}

impl FinFunction {
    pub fn new(codomain: usize, values: Vec<usize>) -> Result<Self> {
        if let Some((i, v)) = values
            .iter()
            .enumerate()
            .find(|(_, &v)| v == 0 || v > codomain)
        {
            return Err(Error::OutOfRange(format!(
                "value {v} at {} not in (1..={codomain})",
                i + 1
            )));
        }
        Ok(FinFunction { codomain, values })
    }

    pub(crate) fn new_unchecked(codomain: usize, values: Vec<usize>) -> Self {
        debug_assert!(values.iter().all(|&v| v >= 1 && v <= codomain));
        FinFunction { codomain, values }
    }

    pub fn identity(n: usize) -> Self {
        FinFunction::new_unchecked(n, (1..=n).collect())
    }

    /// The constant function `(n] -> (m]` with value `c`.
    pub fn constant(n: usize, c: usize, m: usize) -> Result<Self> {
        FinFunction::new(m, vec![c; n])
    }

    /// The unique function `(0] -> (m]`.
    pub fn empty(m: usize) -> Self {
        FinFunction::new_unchecked(m, Vec::new())
    }

    /// The map `(1] -> (n]` picking `i`.
    pub fn point(i: usize, n: usize) -> Result<Self> {
        FinFunction::new(n, vec![i])
    }

    pub fn domain(&self) -> usize {
        self.values.len()
    }

    pub fn codomain(&self) -> usize {
        self.codomain
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// Image of the 1-based point `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.values[i - 1]
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.codomain + 1];
        self.values.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.codomain + 1];
        for &v in &self.values {
            hit[v] = true;
        }
        hit[1..].iter().all(|&h| h)
    }

    pub fn is_bijective(&self) -> bool {
        self.domain() == self.codomain && self.is_injective()
    }

    pub fn is_monotone(&self) -> bool {
        self.values.windows(2).all(|w| w[0] <= w[1])
    }

    /// Sizes of the fibers over `1..=codomain`.
    pub fn fiber_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.codomain];
        for &v in &self.values {
            sizes[v - 1] += 1;
        }
        sizes
    }

    /// Points of the fiber over `j`, in increasing order.
    pub fn fiber(&self, j: usize) -> Vec<usize> {
        (1..=self.domain()).filter(|&i| self.apply(i) == j).collect()
    }

    /// The pointwise composite `self ∘ f`.
    pub fn after(&self, f: &FinFunction) -> Result<FinFunction> {
        compose(self, f)
    }

    /// Every function `(n] -> (m]`, in lexicographic order of value lists.
    pub fn all(n: usize, m: usize) -> impl Iterator<Item = FinFunction> {
        AllFunctions::new(n, m)
    }

    /// Every monotone function `(n] -> (m]`, lexicographic order.
    pub fn all_monotone(n: usize, m: usize) -> Vec<FinFunction> {
        FinFunction::all(n, m).filter(|f| f.is_monotone()).collect()
    }

    /// The monotone map whose fibers have the given sizes.
    pub fn monotone_from_fiber_sizes(sizes: &[usize]) -> FinFunction {
        let values = sizes
            .iter()
            .enumerate()
            .flat_map(|(j, &s)| std::iter::repeat_n(j + 1, s))
            .collect();
        FinFunction::new_unchecked(sizes.len(), values)
    }

    /// Concatenation `[f | g] : (n + n'] -> (m]` of two maps with a shared codomain.
    pub fn copair(&self, other: &FinFunction) -> Result<FinFunction> {
        if self.codomain != other.codomain {
            return Err(Error::size("copair needs a shared codomain"));
        }
        let mut values = self.values.clone();
        values.extend_from_slice(&other.values);
        Ok(FinFunction::new_unchecked(self.codomain, values))
    }
}

impl fmt::Debug for FinFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}:{}→{}", self.values, self.domain(), self.codomain)
    }
}

impl fmt::Display for FinFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vals: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        write!(f, "[{}]", vals.join(","))
    }
}

struct AllFunctions {
    m: usize,
    next: Option<Vec<usize>>,
}

impl AllFunctions {
    fn new(n: usize, m: usize) -> Self {
        let next = if n > 0 && m == 0 { None } else { Some(vec![1; n]) };
        AllFunctions { m, next }
    }
}

impl Iterator for AllFunctions {
    type Item = FinFunction;

    fn next(&mut self) -> Option<FinFunction> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut pos = succ.len();
        while pos > 0 {
            pos -= 1;
            if succ[pos] < self.m {
                succ[pos] += 1;
                self.next = Some(succ);
                break;
            }
            succ[pos] = 1;
        }
        Some(FinFunction::new_unchecked(self.m, current))
    }
}

/// Pointwise composite `g ∘ f`.
pub fn compose(g: &FinFunction, f: &FinFunction) -> Result<FinFunction> {
    if f.codomain != g.domain() {
        return Err(Error::size(format!(
            "cannot compose {g:?} after {f:?}"
        )));
    }
    Ok(FinFunction::new_unchecked(
        g.codomain,
        f.values.iter().map(|&v| g.apply(v)).collect(),
    ))
}

/// A bijection `(n] -> (n]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Permutation(FinFunction);

impl Permutation {
    pub fn new(values: Vec<usize>) -> Result<Self> {
        let f = FinFunction::new(values.len(), values)?;
        Permutation::from_function(f)
    }

    pub fn from_function(f: FinFunction) -> Result<Self> {
        if !f.is_bijective() {
            return Err(Error::size(format!("{f:?} is not a bijection")));
        }
        Ok(Permutation(f))
    }

    pub fn identity(n: usize) -> Self {
        Permutation(FinFunction::identity(n))
    }

    /// The transposition of `i` and `j` in `S_n`.
    pub fn transposition(n: usize, i: usize, j: usize) -> Result<Self> {
        if i == 0 || j == 0 || i > n || j > n {
            return Err(Error::OutOfRange(format!("transposition ({i} {j}) in S_{n}")));
        }
        let mut values: Vec<usize> = (1..=n).collect();
        values.swap(i - 1, j - 1);
        Ok(Permutation(FinFunction::new_unchecked(n, values)))
    }

    pub fn size(&self) -> usize {
        self.0.domain()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0.apply(i)
    }

    pub fn values(&self) -> &[usize] {
        self.0.values()
    }

    pub fn as_function(&self) -> &FinFunction {
        &self.0
    }

    pub fn into_function(self) -> FinFunction {
        self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.values.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    pub fn inverse(&self) -> Permutation {
        let mut values = vec![0; self.size()];
        for (i, &v) in self.0.values.iter().enumerate() {
            values[v - 1] = i + 1;
        }
        Permutation(FinFunction::new_unchecked(self.size(), values))
    }

    /// The product `self ∘ other`.
    pub fn then_after(&self, other: &Permutation) -> Result<Permutation> {
        Ok(Permutation(compose(&self.0, &other.0)?))
    }

    /// Position of this permutation in the lexicographic listing of `S_n`.
    pub fn rank(&self) -> usize {
        let n = self.size();
        let mut used = vec![false; n + 1];
        let mut rank = 0;
        for (i, &v) in self.0.values.iter().enumerate() {
            let smaller = (1..v).filter(|&u| !used[u]).count();
            rank += smaller * factorial(n - 1 - i);
            used[v] = true;
        }
        rank
    }

    /// Inverse of [`Permutation::rank`].
    pub fn unrank(n: usize, mut rank: usize) -> Result<Permutation> {
        if rank >= factorial(n) {
            return Err(Error::OutOfRange(format!("rank {rank} in S_{n}")));
        }
        let mut pool: Vec<usize> = (1..=n).collect();
        let mut values = Vec::with_capacity(n);
        for i in 0..n {
            let block = factorial(n - 1 - i);
            values.push(pool.remove(rank / block));
            rank %= block;
        }
        Ok(Permutation(FinFunction::new_unchecked(n, values)))
    }

    /// All of `S_n` in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        FinFunction::all(n, n)
            .filter(|f| f.is_injective())
            .map(Permutation)
            .collect()
    }

    /// Adjacent transpositions generating `S_n`.
    pub fn generators(n: usize) -> Vec<Permutation> {
        (1..n)
            .map(|i| Permutation::transposition(n, i, i + 1).expect("in range"))
            .collect()
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "σ{}", self.0)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// An arity decomposition `n = n_1 + ... + n_m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BlockStructure {
    sizes: Vec<usize>,
    offsets: Vec<usize>,
    total: usize,
}

impl BlockStructure {
    pub fn new(sizes: Vec<usize>) -> Self {
        let mut offsets = Vec::with_capacity(sizes.len());
        let mut total = 0;
        for &s in &sizes {
            offsets.push(total);
            total += s;
        }
        BlockStructure {
            sizes,
            offsets,
            total,
        }
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn total(&self) -> usize {
        self.total
    }

    pub fn len(&self) -> usize {
        self.sizes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sizes.is_empty()
    }

    /// 1-based position of the pair `⟨i, r⟩` in the lexicographic listing.
    pub fn lex_index(&self, i: usize, r: usize) -> Result<usize> {
        if i == 0 || i > self.len() || r == 0 || r > self.sizes[i - 1] {
            return Err(Error::OutOfRange(format!(
                "pair ⟨{i},{r}⟩ in blocks {:?}",
                self.sizes
            )));
        }
        Ok(self.offsets[i - 1] + r)
    }

    /// Inverse of [`BlockStructure::lex_index`].
    pub fn lex_pair(&self, pos: usize) -> Result<(usize, usize)> {
        if pos == 0 || pos > self.total {
            return Err(Error::OutOfRange(format!(
                "position {pos} in blocks {:?}",
                self.sizes
            )));
        }
        let i = (0..self.len())
            .rev()
            .find(|&i| self.offsets[i] < pos && self.sizes[i] > 0)
            .expect("position lies in some block");
        Ok((i + 1, pos - self.offsets[i]))
    }

    /// The monotone fiber-collapse map `(total] -> (m]`.
    pub fn collapse(&self) -> FinFunction {
        FinFunction::monotone_from_fiber_sizes(&self.sizes)
    }

    /// The inclusion `(n_i] -> (total]` of block `i`.
    pub fn inclusion(&self, i: usize) -> FinFunction {
        let off = self.offsets[i - 1];
        FinFunction::new_unchecked(self.total, (1..=self.sizes[i - 1]).map(|r| off + r).collect())
    }
}

/// Places the permutations `blocks[i]` one after another.
pub fn block_sum(blocks: &[Permutation], structure: &BlockStructure) -> Result<Permutation> {
    if blocks.len() != structure.len() {
        return Err(Error::size(format!(
            "{} blocks for structure {:?}",
            blocks.len(),
            structure.sizes()
        )));
    }
    let mut values = Vec::with_capacity(structure.total());
    for (i, (b, &s)) in blocks.iter().zip(structure.sizes()).enumerate() {
        if b.size() != s {
            return Err(Error::size(format!(
                "block {} has size {} but structure wants {s}",
                i + 1,
                b.size()
            )));
        }
        let off = structure.offsets[i];
        values.extend(b.values().iter().map(|v| v + off));
    }
    Ok(Permutation(FinFunction::new_unchecked(structure.total(), values)))
}

/// The chosen pullback of two maps into a common codomain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pullback {
    /// Projection onto the domain of `f`.
    pub q1: FinFunction,
    /// Projection onto the domain of `p`; monotone whenever `p` is.
    pub q2: FinFunction,
}

impl Pullback {
    pub fn size(&self) -> usize {
        self.q1.domain()
    }
}

/// Pullback of `f : (r] -> (m]` along `p : (r'] -> (m]`.
///
/// Pairs `(a, b)` with `f(a) = p(b)` are listed by `b` first and `a` second,
/// which makes `q2` monotone.
pub fn pullback(f: &FinFunction, p: &FinFunction) -> Result<Pullback> {
    if f.codomain() != p.codomain() {
        return Err(Error::size(format!("pullback of {f:?} and {p:?}")));
    }
    let mut q1 = Vec::new();
    let mut q2 = Vec::new();
    for b in 1..=p.domain() {
        for a in 1..=f.domain() {
            if f.apply(a) == p.apply(b) {
                q1.push(a);
                q2.push(b);
            }
        }
    }
    Ok(Pullback {
        q1: FinFunction::new_unchecked(f.domain(), q1),
        q2: FinFunction::new_unchecked(p.domain(), q2),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ff(m: usize, v: &[usize]) -> FinFunction {
        FinFunction::new(m, v.to_vec()).unwrap()
    }

    fn perm(v: &[usize]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    #[test]
    fn compose_examples() {
        let id3 = FinFunction::identity(3);
        assert_eq!(compose(&id3, &id3).unwrap(), id3);
        assert_eq!(compose(&ff(2, &[2, 1]), &ff(2, &[1, 1])).unwrap(), ff(2, &[2, 2]));
        assert!(matches!(
            compose(&ff(2, &[1, 2]), &ff(3, &[1])),
            Err(Error::SizeMismatch(_))
        ));
    }

    #[test]
    fn compose_is_associative_and_unital_up_to_size_three() {
        let sizes = 0..=3;
        for a in sizes.clone() {
            for b in sizes.clone() {
                for f in FinFunction::all(a, b) {
                    assert_eq!(compose(&FinFunction::identity(b), &f).unwrap(), f);
                    assert_eq!(compose(&f, &FinFunction::identity(a)).unwrap(), f);
                    for c in sizes.clone() {
                        for g in FinFunction::all(b, c) {
                            for h in FinFunction::all(c, 2) {
                                assert_eq!(
                                    compose(&h, &compose(&g, &f).unwrap()).unwrap(),
                                    compose(&compose(&h, &g).unwrap(), &f).unwrap()
                                );
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn all_functions_counts() {
        assert_eq!(FinFunction::all(3, 2).count(), 8);
        assert_eq!(FinFunction::all(0, 0).count(), 1);
        assert_eq!(FinFunction::all(2, 0).count(), 0);
        assert_eq!(FinFunction::all(0, 4).count(), 1);
        assert_eq!(Permutation::all(4).len(), 24);
    }

    #[test]
    fn rank_round_trips_in_lex_order() {
        for n in 0..=5 {
            for (r, p) in Permutation::all(n).iter().enumerate() {
                assert_eq!(p.rank(), r);
                assert_eq!(&Permutation::unrank(n, r).unwrap(), p);
            }
        }
    }

    #[test]
    fn pullback_examples() {
        let pb = pullback(&FinFunction::identity(2), &ff(2, &[2])).unwrap();
        assert_eq!((pb.q1, pb.q2), (ff(2, &[2]), ff(1, &[1])));

        let c = ff(1, &[1, 1]);
        let pb = pullback(&c, &c).unwrap();
        assert_eq!(pb.size(), 4);
        assert_eq!(pb.q1, ff(2, &[1, 2, 1, 2]));
        assert_eq!(pb.q2, ff(2, &[1, 1, 2, 2]));

        let f = ff(3, &[3, 1, 3, 2]);
        let pb = pullback(&f, &FinFunction::identity(3)).unwrap();
        // Listing by the identity leg reorders the pairs by fiber.
        assert_eq!(pb.q2, ff(3, &[1, 2, 3, 3]));
        assert_eq!(compose(&f, &pb.q1).unwrap(), pb.q2);
    }

    #[test]
    fn pullback_along_identity_in_identity_order() {
        let f = ff(2, &[1, 1, 2]);
        let pb = pullback(&f, &FinFunction::identity(2)).unwrap();
        assert_eq!(pb.q1, FinFunction::identity(3));
        assert_eq!(pb.q2, f);
    }

    #[test]
    fn block_sum_examples() {
        let s = BlockStructure::new(vec![2, 3]);
        assert_eq!(
            block_sum(&[Permutation::identity(2), Permutation::identity(3)], &s).unwrap(),
            Permutation::identity(5)
        );
        let s = BlockStructure::new(vec![2, 1]);
        assert_eq!(
            block_sum(&[perm(&[2, 1]), Permutation::identity(1)], &s).unwrap(),
            perm(&[2, 1, 3])
        );
        let s = BlockStructure::new(vec![2, 2]);
        assert_eq!(
            block_sum(&[perm(&[2, 1]), perm(&[2, 1])], &s).unwrap(),
            perm(&[2, 1, 4, 3])
        );
        assert!(block_sum(&[perm(&[2, 1])], &s).is_err());
    }

    #[test]
    fn lex_index_examples() {
        let s = BlockStructure::new(vec![2, 1]);
        assert_eq!(s.lex_index(1, 1).unwrap(), 1);
        assert_eq!(s.lex_index(2, 1).unwrap(), 3);
        assert!(matches!(s.lex_index(2, 2), Err(Error::OutOfRange(_))));
        assert!(matches!(s.lex_index(3, 1), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn lex_index_round_trips_for_totals_up_to_six() {
        fn compositions(total: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if acc.iter().sum::<usize>() == total && !acc.is_empty() {
                out.push(acc.clone());
            }
            if acc.len() >= 4 {
                return;
            }
            let used: usize = acc.iter().sum();
            for s in 0..=(total - used) {
                acc.push(s);
                compositions(total, acc, out);
                acc.pop();
            }
        }
        for total in 0..=6 {
            let mut all = Vec::new();
            compositions(total, &mut Vec::new(), &mut all);
            for sizes in all {
                let s = BlockStructure::new(sizes.clone());
                // Brute-force listing of pairs in lexicographic order.
                let pairs: Vec<(usize, usize)> = sizes
                    .iter()
                    .enumerate()
                    .flat_map(|(i, &n)| (1..=n).map(move |r| (i + 1, r)))
                    .collect();
                for (pos, &(i, r)) in pairs.iter().enumerate() {
                    assert_eq!(s.lex_index(i, r).unwrap(), pos + 1);
                    assert_eq!(s.lex_pair(pos + 1).unwrap(), (i, r));
                }
            }
        }
    }
}

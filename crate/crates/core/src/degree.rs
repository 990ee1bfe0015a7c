use std::fmt;

/// An element of ℕ^k with the componentwise order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Degree(Vec<u32>);

impl Degree {
    pub fn zero(k: usize) -> Self {
        Degree(vec![0; k])
    }

    /// The unit vector for 1-based colour `color`.
    pub fn unit(k: usize, color: usize) -> Self {
        let mut d = vec![0; k];
        d[color - 1] = 1;
        Degree(d)
    }

    pub fn splat(k: usize, value: u32) -> Self {
        Degree(vec![value; k])
    }

    pub fn from_vec(components: Vec<u32>) -> Self {
        Degree(components)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn components(&self) -> &[u32] {
        &self.0
    }

    /// Component for 1-based colour `color`.
    pub fn get(&self, color: usize) -> u32 {
        self.0[color - 1]
    }

    pub fn total(&self) -> usize {
        self.0.iter().map(|&c| c as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn le(&self, other: &Degree) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn join(&self, other: &Degree) -> Degree {
        Degree(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn meet(&self, other: &Degree) -> Degree {
        Degree(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn checked_add(&self, other: &Degree) -> Option<Degree> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_add(*b))
            .collect::<Option<Vec<_>>>()
            .map(Degree)
    }

    /// `self - other`, defined when `other <= self`.
    pub fn checked_sub(&self, other: &Degree) -> Option<Degree> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Degree)
    }

    /// The colour word `1^d1 2^d2 … k^dk`, i.e. the colours of a colour-sorted
    /// path of this degree.
    pub fn sorted_colors(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.total());
        for (i, &c) in self.0.iter().enumerate() {
            out.extend(std::iter::repeat_n(i + 1, c as usize));
        }
        out
    }

    /// All degrees `n` with `0 <= n <= self`, ordered by total degree and then
    /// lexicographically.
    pub fn box_below(&self) -> Vec<Degree> {
        let mut out = vec![Vec::new()];
        for &c in &self.0 {
            let mut next = Vec::with_capacity(out.len() * (c as usize + 1));
            for prefix in &out {
                for v in 0..=c {
                    let mut p: Vec<u32> = prefix.clone();
                    p.push(v);
                    next.push(p);
                }
            }
            out = next;
        }
        let mut degrees: Vec<Degree> = out.into_iter().map(Degree).collect();
        degrees.sort_by(|a, b| a.total().cmp(&b.total()).then_with(|| a.cmp(b)));
        degrees
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

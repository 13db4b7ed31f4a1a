use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::perm::{Perm, MAX_DEGREE};

/// A partition of the degree: the cycle lengths of a permutation, largest first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CycleType(Vec<u32>);

impl CycleType {
    /// Normalizes the parts (sorted, largest first). Zero parts are rejected.
    pub fn new(mut parts: Vec<u32>) -> Option<Self> {
        if parts.is_empty() || parts.contains(&0) {
            return None;
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Some(CycleType(parts))
    }

    /// `parts` padded with fixed points up to `degree`.
    pub fn padded(parts: &[u32], degree: u32) -> Option<Self> {
        let sum: u32 = parts.iter().sum();
        if sum > degree {
            return None;
        }
        let mut v = parts.to_vec();
        v.extend(std::iter::repeat_n(1, (degree - sum) as usize));
        Self::new(v)
    }

    /// A single transposition in degree `d ≥ 2`.
    pub fn transposition(d: u32) -> Self {
        Self::padded(&[2], d).expect("degree at least 2")
    }

    pub fn identity(d: u32) -> Self {
        CycleType(vec![1; d as usize])
    }

    /// All parts equal to `p`.
    pub fn uniform(p: u32, degree: u32) -> Option<Self> {
        (p > 0 && degree % p == 0).then(|| CycleType(vec![p; (degree / p) as usize]))
    }

    pub(crate) fn from_images(images: &[u8]) -> Self {
        let d = images.len();
        let mut seen = [false; MAX_DEGREE];
        let mut parts = Vec::new();
        for s in 0..d {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = images[x] as usize;
                len += 1;
            }
            parts.push(len);
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        CycleType(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn num_cycles(&self) -> u32 {
        self.0.len() as u32
    }

    /// `d − #cycles`, the contribution to the Riemann–Hurwitz count.
    pub fn ramification(&self) -> u32 {
        self.degree() - self.num_cycles()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&p| p == 1)
    }

    pub fn is_transposition(&self) -> bool {
        self.0.first() == Some(&2) && self.0[1..].iter().all(|&p| p == 1)
    }

    /// Size of the conjugacy class in `S_d`: `d! / ∏ (k^{m_k} · m_k!)`.
    pub fn class_size(&self) -> u128 {
        let d = self.degree() as u128;
        let mut num: u128 = (1..=d).product();
        let mut i = 0;
        while i < self.0.len() {
            let k = self.0[i] as u128;
            let mut m = 0u128;
            while i < self.0.len() && self.0[i] as u128 == k {
                m += 1;
                i += 1;
            }
            num /= k.pow(m as u32);
            num /= (1..=m).product::<u128>();
        }
        num
    }

    /// The lexicographically least permutation of this type: fixed points
    /// first, then consecutive cycles in increasing length.
    pub fn representative(&self) -> Perm {
        let d = self.degree() as usize;
        let mut images: Vec<u8> = (0..d as u8).collect();
        let mut start = 0usize;
        for &len in self.0.iter().rev() {
            let len = len as usize;
            for k in 0..len {
                images[start + k] = (start + (k + 1) % len) as u8;
            }
            start += len;
        }
        Perm::from_images_unchecked(images)
    }

    /// Every permutation of this type, as a flat table of image rows.
    pub fn enumerate(&self) -> ClassTable {
        let d = self.degree() as usize;
        let mut lengths: Vec<u32> = self.0.clone();
        lengths.sort_unstable();
        let mut out = ClassTable {
            degree: d,
            data: Vec::with_capacity(self.class_size().min(1 << 28) as usize * d),
        };
        let mut images: Vec<u8> = (0..d as u8).collect();
        let mut used = vec![false; d];
        enumerate_rec(&mut lengths, &mut images, &mut used, &mut out.data);
        out
    }
}

fn enumerate_rec(lengths: &mut Vec<u32>, images: &mut [u8], used: &mut [bool], out: &mut Vec<u8>) {
    let start = match used.iter().position(|u| !u) {
        None => {
            out.extend_from_slice(images);
            return;
        }
        Some(s) => s,
    };
    let mut tried: Vec<u32> = Vec::new();
    for idx in 0..lengths.len() {
        let len = lengths[idx];
        if tried.contains(&len) {
            continue;
        }
        tried.push(len);
        lengths.swap_remove(idx);
        used[start] = true;
        let mut cycle = vec![start];
        fill_cycle(len as usize, &mut cycle, lengths, images, used, out);
        used[start] = false;
        lengths.push(len);
        let last = lengths.len() - 1;
        lengths.swap(idx, last);
    }
}

fn fill_cycle(
    len: usize,
    cycle: &mut Vec<usize>,
    lengths: &mut Vec<u32>,
    images: &mut [u8],
    used: &mut [bool],
    out: &mut Vec<u8>,
) {
    if cycle.len() == len {
        for k in 0..len {
            images[cycle[k]] = cycle[(k + 1) % len] as u8;
        }
        enumerate_rec(lengths, images, used, out);
        for &x in cycle.iter() {
            images[x] = x as u8;
        }
        return;
    }
    for x in 0..used.len() {
        if used[x] {
            continue;
        }
        used[x] = true;
        cycle.push(x);
        fill_cycle(len, cycle, lengths, images, used, out);
        cycle.pop();
        used[x] = false;
    }
}

/// Flat storage for all permutations of one conjugacy class.
#[derive(Clone, Debug)]
pub struct ClassTable {
    degree: usize,
    data: Vec<u8>,
}

impl ClassTable {
    pub(crate) fn empty(degree: usize) -> Self {
        ClassTable { degree, data: Vec::new() }
    }

    pub(crate) fn concat(degree: usize, tables: &[ClassTable]) -> Self {
        ClassTable {
            degree,
            data: tables.iter().flat_map(|t| t.data.iter().copied()).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.data.len().checked_div(self.degree).unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.data[i * self.degree..(i + 1) * self.degree]
    }

    pub fn perm(&self, i: usize) -> Perm {
        Perm::from_images_unchecked(self.row(i).to_vec())
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(u32::to_string).collect();
        f.write_str(&s.join(","))
    }
}

impl CycleType {
    /// Short form with fixed points dropped and repeats as powers: `2^21`,
    /// `4,2`, `id`. Parsed back by branch-data strings of the same degree.
    pub fn compact(&self) -> String {
        if self.is_identity() {
            return "id".into();
        }
        let mut out: Vec<String> = Vec::new();
        let mut i = 0;
        let p = &self.0;
        while i < p.len() && p[i] > 1 {
            let j = p[i..].iter().take_while(|&&x| x == p[i]).count();
            out.push(if j > 1 { format!("{}^{j}", p[i]) } else { p[i].to_string() });
            i += j;
        }
        out.join(",")
    }
}

impl FromStr for CycleType {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts = s
            .split([',', '+'])
            .map(|t| t.trim().parse::<u32>().map_err(|e| format!("bad part {t:?}: {e}")))
            .collect::<Result<Vec<_>, _>>()?;
        CycleType::new(parts).ok_or_else(|| format!("invalid partition {s:?}"))
    }
}

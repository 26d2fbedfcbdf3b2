//! Abstract finite groups given by a multiplication table.

use num_integer::Integer;

/// Elements are 0..n with 0 the identity.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    n: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    elt_order: Vec<u32>,
    gens: Vec<u32>,
    classes: Vec<Vec<u32>>,
    class_of: Vec<u32>,
}

impl FiniteGroup {
    /// `mul[i*n+j]` is the index of element i·j.
    pub fn from_table(n: usize, mul: Vec<u32>, gens: Vec<u32>) -> Self {
        assert_eq!(mul.len(), n * n);
        let mut inv = vec![0u32; n];
        for i in 0..n {
            for j in 0..n {
                if mul[i * n + j] == 0 {
                    inv[i] = j as u32;
                    break;
                }
            }
        }
        let mut elt_order = vec![1u32; n];
        for (i, o) in elt_order.iter_mut().enumerate() {
            let mut x = i;
            let mut k = 1;
            while x != 0 {
                x = mul[x * n + i] as usize;
                k += 1;
            }
            *o = k;
        }
        let mut g = FiniteGroup { n, mul, inv, elt_order, gens, classes: Vec::new(), class_of: Vec::new() };
        g.compute_classes();
        g
    }

    fn compute_classes(&mut self) {
        let n = self.n;
        let conj_by: Vec<u32> = if self.gens.is_empty() { (0..n as u32).collect() } else { self.gens.clone() };
        let mut class_of = vec![u32::MAX; n];
        let mut classes: Vec<Vec<u32>> = Vec::new();
        for start in 0..n {
            if class_of[start] != u32::MAX {
                continue;
            }
            let id = classes.len() as u32;
            let mut members = vec![start as u32];
            class_of[start] = id;
            let mut k = 0;
            while k < members.len() {
                let x = members[k] as usize;
                for &h in &conj_by {
                    let y = self.conj(x, h as usize);
                    if class_of[y] == u32::MAX {
                        class_of[y] = id;
                        members.push(y as u32);
                    }
                }
                k += 1;
            }
            members.sort_unstable();
            classes.push(members);
        }
        // canonical order: identity, then by element order, size, smallest member
        let mut idx: Vec<usize> = (0..classes.len()).collect();
        idx.sort_by_key(|&c| (self.elt_order[classes[c][0] as usize], classes[c].len(), classes[c][0]));
        let classes: Vec<Vec<u32>> = idx.iter().map(|&c| classes[c].clone()).collect();
        let mut class_of = vec![0u32; n];
        for (c, members) in classes.iter().enumerate() {
            for &x in members {
                class_of[x as usize] = c as u32;
            }
        }
        self.classes = classes;
        self.class_of = class_of;
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// h·x·h⁻¹.
    pub fn conj(&self, x: usize, h: usize) -> usize {
        self.mul(self.mul(h, x), self.inv(h))
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let o = self.elt_order[a] as i64;
        let e = k.rem_euclid(o);
        let mut acc = 0;
        for _ in 0..e {
            acc = self.mul(acc, a);
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> u32 {
        self.elt_order[a]
    }

    pub fn gens(&self) -> &[u32] {
        &self.gens
    }

    pub fn classes(&self) -> &[Vec<u32>] {
        &self.classes
    }

    pub fn class_of(&self, a: usize) -> usize {
        self.class_of[a] as usize
    }

    pub fn class_rep(&self, c: usize) -> usize {
        self.classes[c][0] as usize
    }

    pub fn class_size(&self, c: usize) -> usize {
        self.classes[c].len()
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    /// Least common multiple of element orders.
    pub fn exponent(&self) -> u32 {
        self.elt_order.iter().fold(1u32, |a, &b| a.lcm(&b))
    }

    /// Class of g^k for g in class c.
    pub fn power_class(&self, c: usize, k: i64) -> usize {
        self.class_of(self.pow(self.class_rep(c), k))
    }

    /// Elements commuting with a.
    pub fn centraliser(&self, a: usize) -> Vec<usize> {
        (0..self.n).filter(|&h| self.mul(h, a) == self.mul(a, h)).collect()
    }

    /// Induced subgroup on a sorted element list closed under products.
    pub fn subgroup(&self, elems: &[usize]) -> (FiniteGroup, Vec<usize>) {
        let k = elems.len();
        let mut local = vec![u32::MAX; self.n];
        for (i, &e) in elems.iter().enumerate() {
            local[e] = i as u32;
        }
        assert_eq!(elems.first(), Some(&0), "subgroups must contain the identity first");
        let mut mul = vec![0u32; k * k];
        for (i, &a) in elems.iter().enumerate() {
            for (j, &b) in elems.iter().enumerate() {
                let l = local[self.mul(a, b)];
                assert!(l != u32::MAX, "element list is not closed");
                mul[i * k + j] = l;
            }
        }
        (FiniteGroup::from_table(k, mul, Vec::new()), elems.to_vec())
    }

    /// Closure of a generating set as a sorted element list.
    pub fn generate(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.n];
        seen[0] = true;
        let mut out = vec![0usize];
        let mut k = 0;
        while k < out.len() {
            let x = out[k];
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                }
            }
            k += 1;
        }
        out.sort_unstable();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic(n: usize) -> FiniteGroup {
        let mul = (0..n * n).map(|k| ((k / n + k % n) % n) as u32).collect();
        FiniteGroup::from_table(n, mul, vec![1])
    }

    #[test]
    fn cyclic_group_basics() {
        let g = cyclic(6);
        assert_eq!(g.num_classes(), 6);
        assert_eq!(g.element_order(2), 3);
        assert_eq!(g.inv(1), 5);
        assert_eq!(g.exponent(), 6);
        assert_eq!(g.generate(&[2]), vec![0, 2, 4]);
        let (h, _) = g.subgroup(&[0, 2, 4]);
        assert_eq!(h.order(), 3);
    }
}

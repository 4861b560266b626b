//! A small finite constraint solver used to enumerate structured maps
//! (functors, natural transformations, internal functors) without walking
//! the full product of candidate tables.
//!
//! Variables are assigned in index order. Each constraint is attached to the
//! largest variable it reads and is checked as soon as that variable is
//! assigned, so a failing prefix is pruned immediately. Solutions come out in
//! lexicographic order of their value vectors, provided every domain lists its
//! values in ascending order.

use crate::error::{Error, Result};

type DomainFn<'a> = Box<dyn Fn(&[u32]) -> Vec<u32> + 'a>;
type Check<'a> = Box<dyn Fn(&[u32]) -> bool + 'a>;

enum Domain<'a> {
    Range(u32),
    List(Vec<u32>),
    Dynamic(DomainFn<'a>),
}

/// A finite constraint problem over `u32`-valued variables.
pub struct Csp<'a> {
    domains: Vec<Domain<'a>>,
    checks: Vec<Vec<Check<'a>>>,
    limit: Option<usize>,
}

impl<'a> Default for Csp<'a> {
    fn default() -> Self {
        Csp::new()
    }
}

impl<'a> Csp<'a> {
    /// An empty problem.
    pub fn new() -> Csp<'a> {
        Csp {
            domains: Vec::new(),
            checks: Vec::new(),
            limit: None,
        }
    }

    /// Adds a variable ranging over `0..n`; returns its index.
    pub fn var_range(&mut self, n: usize) -> usize {
        self.push(Domain::Range(n as u32))
    }

    /// Adds a variable ranging over an explicit ascending list.
    pub fn var_list(&mut self, values: Vec<u32>) -> usize {
        self.push(Domain::List(values))
    }

    /// Adds a variable whose domain depends on the values of earlier variables.
    /// The closure receives the assignment prefix and returns ascending values.
    pub fn var_dynamic(&mut self, f: impl Fn(&[u32]) -> Vec<u32> + 'a) -> usize {
        self.push(Domain::Dynamic(Box::new(f)))
    }

    fn push(&mut self, d: Domain<'a>) -> usize {
        self.domains.push(d);
        self.checks.push(Vec::new());
        self.domains.len() - 1
    }

    /// Number of variables.
    pub fn len(&self) -> usize {
        self.domains.len()
    }

    /// True when there are no variables.
    pub fn is_empty(&self) -> bool {
        self.domains.is_empty()
    }

    /// Adds a constraint reading only variables `<= trigger`; it is checked
    /// once `trigger` has a value.
    pub fn constrain(&mut self, trigger: usize, f: impl Fn(&[u32]) -> bool + 'a) {
        self.checks[trigger].push(Box::new(f));
    }

    /// Refuses to produce more than `n` solutions: enumeration stops with a
    /// cap error instead of returning a partial list.
    pub fn with_limit(mut self, n: usize) -> Csp<'a> {
        self.limit = Some(n);
        self
    }

    /// Visits every solution in lexicographic order. The visitor returns
    /// `false` to stop early.
    pub fn search(&self, mut visit: impl FnMut(&[u32]) -> bool) {
        let n = self.domains.len();
        if n == 0 {
            visit(&[]);
            return;
        }
        let mut values: Vec<u32> = Vec::with_capacity(n);
        let mut cands: Vec<Vec<u32>> = Vec::with_capacity(n);
        let mut pos: Vec<usize> = Vec::with_capacity(n);
        cands.push(self.candidates(0, &values));
        pos.push(0);
        loop {
            let depth = cands.len() - 1;
            let p = pos[depth];
            if p >= cands[depth].len() {
                cands.pop();
                pos.pop();
                if cands.is_empty() {
                    return;
                }
                values.pop();
                continue;
            }
            pos[depth] += 1;
            let v = cands[depth][p];
            values.truncate(depth);
            values.push(v);
            if !self.checks[depth].iter().all(|c| c(&values)) {
                values.pop();
                continue;
            }
            if depth + 1 == n {
                if !visit(&values) {
                    return;
                }
                values.pop();
            } else {
                cands.push(self.candidates(depth + 1, &values));
                pos.push(0);
            }
        }
    }

    fn candidates(&self, k: usize, prefix: &[u32]) -> Vec<u32> {
        match &self.domains[k] {
            Domain::Range(n) => (0..*n).collect(),
            Domain::List(v) => v.clone(),
            Domain::Dynamic(f) => f(prefix),
        }
    }

    /// All solutions in lexicographic order.
    pub fn solutions(&self) -> Result<Vec<Vec<u32>>> {
        let mut out = Vec::new();
        let mut over = false;
        self.search(|s| {
            if self.limit.is_some_and(|l| out.len() >= l) {
                over = true;
                return false;
            }
            out.push(s.to_vec());
            true
        });
        if over {
            return Err(Error::CapExceeded(format!(
                "more than {} solutions",
                self.limit.unwrap_or(0)
            )));
        }
        Ok(out)
    }

    /// The lexicographically first solution.
    pub fn first(&self) -> Option<Vec<u32>> {
        let mut out = None;
        self.search(|s| {
            out = Some(s.to_vec());
            false
        });
        out
    }

    /// Number of solutions.
    pub fn count(&self) -> usize {
        let mut n = 0;
        self.search(|_| {
            n += 1;
            true
        });
        n
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumerates_in_lex_order() {
        let mut c = Csp::new();
        let a = c.var_range(3);
        let b = c.var_range(3);
        c.constrain(b, move |v| v[a] < v[b]);
        let sols = c.solutions().unwrap();
        assert_eq!(sols, vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
    }

    #[test]
    fn dynamic_domains_see_the_prefix() {
        let mut c = Csp::new();
        c.var_range(3);
        c.var_dynamic(|p| (0..=p[0]).collect());
        assert_eq!(c.count(), 6);
    }

    #[test]
    fn empty_problem_has_one_solution() {
        let c = Csp::new();
        assert_eq!(c.solutions().unwrap(), vec![Vec::<u32>::new()]);
    }

    #[test]
    fn empty_domain_has_no_solution() {
        let mut c = Csp::new();
        c.var_range(2);
        c.var_list(vec![]);
        assert_eq!(c.first(), None);
    }

    #[test]
    fn limit_refuses_instead_of_truncating() {
        let mut c = Csp::new();
        c.var_range(5);
        let c = c.with_limit(3);
        assert!(matches!(c.solutions(), Err(Error::CapExceeded(_))));
    }
}

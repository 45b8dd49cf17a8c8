//! Exact arithmetic in the group ring, augmentation, centrality, conjugacy
//! classes and class sums.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groups::{Group, GroupElement};
use crate::scalar::Coefficient;

/// A finitely supported function `G -> S`, i.e. an element of `S[G]`.
/// Zero coefficients are never stored.
#[derive(Clone, Debug)]
pub struct RingElement<S> {
    group: Arc<Group>,
    terms: BTreeMap<GroupElement, S>,
}

impl<S: Coefficient> PartialEq for RingElement<S> {
    fn eq(&self, other: &Self) -> bool {
        *self.group == *other.group && self.terms == other.terms
    }
}

impl<S: Coefficient> RingElement<S> {
    pub fn zero(group: &Arc<Group>) -> Self {
        RingElement { group: group.clone(), terms: BTreeMap::new() }
    }

    pub fn one(group: &Arc<Group>) -> Self {
        Self::monomial_unchecked(group, group.identity(), S::one())
    }

    /// The group element `g` with coefficient 1.
    pub fn element(group: &Arc<Group>, g: &GroupElement) -> Result<Self> {
        Self::monomial(group, g, S::one())
    }

    pub fn monomial(group: &Arc<Group>, g: &GroupElement, c: S) -> Result<Self> {
        if !group.contains(g) {
            return Err(Error::CrossGroup { left: group.name(), right: format!("{g:?}") });
        }
        Ok(Self::monomial_unchecked(group, g.clone(), c))
    }

    fn monomial_unchecked(group: &Arc<Group>, g: GroupElement, c: S) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(g, c);
        }
        RingElement { group: group.clone(), terms }
    }

    /// Sums the given terms; repeated elements accumulate.
    pub fn from_terms<I>(group: &Arc<Group>, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (GroupElement, S)>,
    {
        let mut out = Self::zero(group);
        for (g, c) in terms {
            if !group.contains(&g) {
                return Err(Error::CrossGroup { left: group.name(), right: format!("{g:?}") });
            }
            out.add_term(g, c);
        }
        Ok(out)
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GroupElement, &S)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, g: &GroupElement) -> S {
        self.terms.get(g).cloned().unwrap_or_else(S::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = &GroupElement> {
        self.terms.keys()
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest word length in the support, 0 for the zero element.
    pub fn support_radius(&self) -> Result<usize> {
        self.terms.keys().map(|g| self.group.word_length(g)).try_fold(0, |m, l| Ok(m.max(l?)))
    }

    /// Largest absolute coefficient, 0 for the zero element.
    pub fn max_abs_coefficient(&self) -> S {
        self.terms.values().map(|c| c.abs()).fold(S::zero(), |m, c| if c > m { c } else { m })
    }

    fn same_group(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.group, &other.group) || *self.group == *other.group {
            Ok(())
        } else {
            Err(Error::CrossGroup { left: self.group.name(), right: other.group.name() })
        }
    }

    /// Adds `c` at `g`, pruning a resulting zero. `g` must belong to the group.
    pub fn add_term(&mut self, g: GroupElement, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(g) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    /// `self += factor * g * u` (left translate of `u` by `g`).
    pub fn add_translate(&mut self, g: &GroupElement, u: &Self, factor: &S) {
        debug_assert!(*self.group == *u.group);
        for (h, c) in &u.terms {
            self.add_term(self.group.op(g, h), factor.clone() * c.clone());
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_group(other)?;
        let mut out = self.clone();
        for (g, c) in &other.terms {
            out.add_term(g.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-S::one())
    }

    pub fn scale(&self, lambda: &S) -> Self {
        if lambda.is_zero() {
            return Self::zero(&self.group);
        }
        let terms = self.terms.iter().map(|(g, c)| (g.clone(), c.clone() * lambda.clone())).collect();
        RingElement { group: self.group.clone(), terms }
    }

    /// `(u v)(g) = sum over ab = g of u(a) v(b)`.
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        self.same_group(other)?;
        let mut out = Self::zero(&self.group);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(self.group.op(a, b), ca.clone() * cb.clone());
            }
        }
        Ok(out)
    }

    /// `g * self`.
    pub fn left_translate(&self, g: &GroupElement) -> Self {
        let mut out = Self::zero(&self.group);
        out.add_translate(g, self, &S::one());
        out
    }

    /// `self * g`.
    pub fn right_translate(&self, g: &GroupElement) -> Self {
        let terms = self.terms.iter().map(|(h, c)| (self.group.op(h, g), c.clone())).collect();
        RingElement { group: self.group.clone(), terms }
    }

    /// The augmentation: sum of all coefficients.
    pub fn augment(&self) -> S {
        self.terms.values().fold(S::zero(), |acc, c| acc + c.clone())
    }

    /// The involution `sum c_g g  ->  sum c_g g^{-1}`.
    pub fn involution(&self) -> Self {
        let terms = self.terms.iter().map(|(g, c)| (self.group.inverse(g), c.clone())).collect();
        RingElement { group: self.group.clone(), terms }
    }

    /// Whether `self` commutes with every generator, which decides membership
    /// in the center of the group ring.
    pub fn is_central(&self) -> bool {
        self.group.generators().iter().all(|g| self.left_translate(g) == self.right_translate(g))
    }

    /// Converts coefficients into another scalar type.
    pub fn map_coefficients<T: Coefficient>(&self, mut f: impl FnMut(&S) -> T) -> RingElement<T> {
        let terms = self
            .terms
            .iter()
            .map(|(g, c)| (g.clone(), f(c)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        RingElement { group: self.group.clone(), terms }
    }

    /// Parses the textual notation `3*t^2 + 1*t^-1`, `1*(0,0,1)`,
    /// `1*r^2 - 1/2*r^-2`. Terms are separated by ` + ` or ` - `; a term is
    /// `coef*element`, a bare element (coefficient 1) or a bare coefficient
    /// (times the identity). `0` is the zero element.
    pub fn parse(group: &Arc<Group>, s: &str) -> Result<Self> {
        let mut out = Self::zero(group);
        let mut sign = S::one();
        let mut expect_term = true;
        for token in s.split_whitespace() {
            match (token, expect_term) {
                ("+", false) => {
                    sign = S::one();
                    expect_term = true;
                }
                ("-", false) => {
                    sign = -S::one();
                    expect_term = true;
                }
                (_, true) => {
                    let (g, c) = parse_term::<S>(group, token)?;
                    out.add_term(g, sign.clone() * c);
                    expect_term = false;
                }
                _ => return Err(Error::Parse(format!("ring element `{s}`: expected `+` or `-` before `{token}`"))),
            }
        }
        if expect_term && !s.trim().is_empty() {
            return Err(Error::Parse(format!("ring element `{s}`: dangling operator")));
        }
        Ok(out)
    }
}

fn parse_term<S: Coefficient>(group: &Group, token: &str) -> Result<(GroupElement, S)> {
    if let Some((c, g)) = token.split_once('*') {
        let coef = c.parse::<S>().map_err(|_| Error::Parse(format!("bad coefficient `{c}`")))?;
        return Ok((group.parse_element(g)?, coef));
    }
    match group.parse_element(token) {
        Ok(g) => Ok((g, S::one())),
        Err(e) => token.parse::<S>().map(|c| (group.identity(), c)).map_err(|_| e),
    }
}

impl<S: Coefficient> fmt::Display for RingElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (g, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, _) => write!(f, "{c}*{g}")?,
                (_, false) => write!(f, " + {c}*{g}")?,
                (_, true) => write!(f, " - {}*{g}", c.abs())?,
            }
        }
        Ok(())
    }
}

/// Outcome of a capped orbit computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConjugacyClass {
    /// The full class, sorted by normal form.
    Finite(Vec<GroupElement>),
    /// The orbit grew past the cap.
    ExceedsCap,
}

impl ConjugacyClass {
    pub fn len(&self) -> Option<usize> {
        match self {
            ConjugacyClass::Finite(v) => Some(v.len()),
            ConjugacyClass::ExceedsCap => None,
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, ConjugacyClass::Finite(v) if v.is_empty())
    }
}

/// Orbit of `g` under conjugation by the symmetric generators, cut off once it
/// has more than `cap` elements.
pub fn conjugacy_class(group: &Group, g: &GroupElement, cap: usize) -> Result<ConjugacyClass> {
    if cap == 0 {
        return Err(Error::InvalidParameter("conjugacy class cap must be at least 1".into()));
    }
    if !group.contains(g) {
        return Err(Error::CrossGroup { left: group.name(), right: format!("{g:?}") });
    }
    let mut seen = BTreeSet::from([g.clone()]);
    let mut frontier = vec![g.clone()];
    while let Some(x) = frontier.pop() {
        for s in group.symmetric_generators() {
            let y = group.conjugate(s, &x);
            if seen.insert(y.clone()) {
                if seen.len() > cap {
                    return Ok(ConjugacyClass::ExceedsCap);
                }
                frontier.push(y);
            }
        }
    }
    Ok(ConjugacyClass::Finite(seen.into_iter().collect()))
}

/// Sum of the conjugacy class of `g`, all coefficients 1.
pub fn class_sum<S: Coefficient>(group: &Arc<Group>, g: &GroupElement, cap: usize) -> Result<RingElement<S>> {
    match conjugacy_class(group, g, cap)? {
        ConjugacyClass::Finite(class) => RingElement::from_terms(group, class.into_iter().map(|h| (h, S::one()))),
        ConjugacyClass::ExceedsCap => Err(Error::NotFiniteClass { cap }),
    }
}

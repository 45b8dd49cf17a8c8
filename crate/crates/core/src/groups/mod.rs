//! Catalog of finitely generated groups with exact normal forms.
//!
//! Every group carries a fixed, ordered generator list. Word length and Cayley
//! balls are taken with respect to the symmetric closure of that list, and
//! balls are ordered by BFS layer, then by normal form.

mod element;

pub use element::{free_label, GroupElement};

/// FNV-1a digest of an integer sequence; stable across runs and platforms.
pub fn stable_digest(words: &[i64]) -> u64 {
    element::fnv1a(words)
}

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering as AtomicOrdering};
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};

/// Default cap on the number of elements in a Cayley ball.
pub const DEFAULT_BALL_CAP: usize = 200_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupKind {
    Trivial,
    CyclicFinite(u64),
    IntegerLattice(usize),
    FreeGroup(usize),
    InfiniteDihedral,
    Heisenberg,
    SymmetricS3,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    pub kind: GroupKind,
    pub generators: Vec<String>,
}

impl GroupSpec {
    /// Spec with the catalog's default generator labels.
    pub fn new(kind: GroupKind) -> Self {
        let generators = match kind {
            GroupKind::Trivial => vec!["e".to_string()],
            GroupKind::CyclicFinite(_) => vec!["t".to_string()],
            GroupKind::IntegerLattice(1) => vec!["t".to_string()],
            GroupKind::IntegerLattice(d) => (1..=d).map(|i| format!("t{i}")).collect(),
            GroupKind::FreeGroup(k) => (0..k).map(free_label).collect(),
            GroupKind::InfiniteDihedral => vec!["r".to_string(), "s".to_string()],
            GroupKind::Heisenberg => vec!["x".to_string(), "y".to_string()],
            GroupKind::SymmetricS3 => vec!["s".to_string(), "c".to_string()],
        };
        GroupSpec { kind, generators }
    }

    /// Catalog name, e.g. `cyclic:4` or `Z^2`.
    pub fn name(&self) -> String {
        match self.kind {
            GroupKind::Trivial => "trivial".into(),
            GroupKind::CyclicFinite(n) => format!("cyclic:{n}"),
            GroupKind::IntegerLattice(1) => "Z".into(),
            GroupKind::IntegerLattice(d) => format!("Z^{d}"),
            GroupKind::FreeGroup(k) => format!("free:{k}"),
            GroupKind::InfiniteDihedral => "dihedral-inf".into(),
            GroupKind::Heisenberg => "heisenberg".into(),
            GroupKind::SymmetricS3 => "S3".into(),
        }
    }

    fn validate(&self) -> Result<()> {
        match self.kind {
            GroupKind::CyclicFinite(0) => Err(Error::InvalidParameter("cyclic order n must be at least 1".into())),
            GroupKind::IntegerLattice(0) => Err(Error::InvalidParameter("lattice rank d must be at least 1".into())),
            GroupKind::FreeGroup(0) => Err(Error::InvalidParameter("free rank k must be at least 1".into())),
            _ if self.generators.is_empty() => Err(Error::InvalidParameter("generator list is empty".into())),
            _ => Ok(()),
        }
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = |msg: &str| Error::Parse(format!("group `{s}`: {msg}"));
        let parse_n = |t: &str| t.parse::<u64>().map_err(|_| bad("expected a nonnegative integer parameter"));
        let kind = match s {
            "trivial" => GroupKind::Trivial,
            "Z" => GroupKind::IntegerLattice(1),
            "dihedral-inf" => GroupKind::InfiniteDihedral,
            "heisenberg" => GroupKind::Heisenberg,
            "S3" => GroupKind::SymmetricS3,
            _ => {
                if let Some(n) = s.strip_prefix("cyclic:") {
                    GroupKind::CyclicFinite(parse_n(n)?)
                } else if let Some(d) = s.strip_prefix("Z^") {
                    GroupKind::IntegerLattice(parse_n(d)? as usize)
                } else if let Some(k) = s.strip_prefix("free:") {
                    GroupKind::FreeGroup(parse_n(k)? as usize)
                } else {
                    return Err(bad("unknown group"));
                }
            }
        };
        let spec = GroupSpec::new(kind);
        spec.validate()?;
        Ok(spec)
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// An ordered Cayley ball with an index from elements to positions.
#[derive(Debug)]
pub struct Ball {
    radius: usize,
    elements: Vec<GroupElement>,
    lengths: Vec<usize>,
    index: HashMap<GroupElement, usize>,
}

impl Ball {
    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn position(&self, g: &GroupElement) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.index.contains_key(g)
    }

    /// Word length of the element at `pos`.
    pub fn length_at(&self, pos: usize) -> usize {
        self.lengths[pos]
    }

    pub fn iter(&self) -> std::slice::Iter<'_, GroupElement> {
        self.elements.iter()
    }
}

#[derive(Debug, Default)]
struct BallCache {
    layers: Vec<Vec<GroupElement>>,
    seen: HashSet<GroupElement>,
    balls: HashMap<usize, Arc<Ball>>,
}

/// A catalog group. Immutable apart from an internal memo of BFS layers.
#[derive(Debug)]
pub struct Group {
    spec: GroupSpec,
    generators: Vec<GroupElement>,
    symmetric: Vec<GroupElement>,
    ball_cap: usize,
    cache: Mutex<BallCache>,
}

/// Builds a catalog group with the default ball cap.
static BALL_CAP: AtomicUsize = AtomicUsize::new(DEFAULT_BALL_CAP);

/// Changes the ball cap of groups constructed afterwards.
pub fn set_default_ball_cap(cap: usize) {
    BALL_CAP.store(cap.max(1), AtomicOrdering::Relaxed);
}

pub fn default_ball_cap() -> usize {
    BALL_CAP.load(AtomicOrdering::Relaxed)
}

pub fn make_group(spec: GroupSpec) -> Result<Arc<Group>> {
    Group::new(spec).map(Arc::new)
}

impl Group {
    /// Group with the process-wide ball cap, see [`set_default_ball_cap`].
    pub fn new(spec: GroupSpec) -> Result<Self> {
        Self::with_ball_cap(spec, default_ball_cap())
    }

    pub fn with_ball_cap(spec: GroupSpec, ball_cap: usize) -> Result<Self> {
        spec.validate()?;
        let generators: Vec<GroupElement> = match spec.kind {
            GroupKind::Trivial => vec![GroupElement::Trivial],
            GroupKind::CyclicFinite(n) => vec![GroupElement::Cyclic(1 % n)],
            GroupKind::IntegerLattice(d) => (0..d)
                .map(|i| {
                    let mut v = vec![0; d];
                    v[i] = 1;
                    GroupElement::Lattice(v)
                })
                .collect(),
            GroupKind::FreeGroup(k) => (1..=k as i32).map(|i| GroupElement::Free(vec![i])).collect(),
            GroupKind::InfiniteDihedral => vec![
                GroupElement::Dihedral { rotation: 1, flip: false },
                GroupElement::Dihedral { rotation: 0, flip: true },
            ],
            GroupKind::Heisenberg => vec![GroupElement::Heisenberg([1, 0, 0]), GroupElement::Heisenberg([0, 1, 0])],
            GroupKind::SymmetricS3 => vec![GroupElement::S3([1, 0, 2]), GroupElement::S3([1, 2, 0])],
        };
        if generators.len() != spec.generators.len() {
            return Err(Error::InvalidParameter(format!(
                "{} expects {} generator labels, got {}",
                spec.name(),
                generators.len(),
                spec.generators.len()
            )));
        }
        let mut group = Group {
            spec,
            generators,
            symmetric: Vec::new(),
            ball_cap,
            cache: Mutex::new(BallCache::default()),
        };
        let id = group.identity();
        let mut sym: Vec<GroupElement> = group
            .generators
            .iter()
            .flat_map(|g| [g.clone(), group.inverse(g)])
            .filter(|g| *g != id)
            .collect();
        sym.sort();
        sym.dedup();
        group.symmetric = sym;
        Ok(group)
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn kind(&self) -> GroupKind {
        self.spec.kind
    }

    pub fn name(&self) -> String {
        self.spec.name()
    }

    pub fn ball_cap(&self) -> usize {
        self.ball_cap
    }

    pub fn identity(&self) -> GroupElement {
        match self.spec.kind {
            GroupKind::Trivial => GroupElement::Trivial,
            GroupKind::CyclicFinite(_) => GroupElement::Cyclic(0),
            GroupKind::IntegerLattice(d) => GroupElement::Lattice(vec![0; d]),
            GroupKind::FreeGroup(_) => GroupElement::Free(Vec::new()),
            GroupKind::InfiniteDihedral => GroupElement::Dihedral { rotation: 0, flip: false },
            GroupKind::Heisenberg => GroupElement::Heisenberg([0, 0, 0]),
            GroupKind::SymmetricS3 => GroupElement::S3([0, 1, 2]),
        }
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    /// Generators together with their inverses, identity removed, sorted.
    pub fn symmetric_generators(&self) -> &[GroupElement] {
        &self.symmetric
    }

    /// `None` for infinite groups.
    pub fn order(&self) -> Option<u64> {
        match self.spec.kind {
            GroupKind::Trivial => Some(1),
            GroupKind::CyclicFinite(n) => Some(n),
            GroupKind::SymmetricS3 => Some(6),
            _ => None,
        }
    }

    pub fn is_abelian(&self) -> bool {
        matches!(
            self.spec.kind,
            GroupKind::Trivial | GroupKind::CyclicFinite(_) | GroupKind::IntegerLattice(_) | GroupKind::FreeGroup(1)
        )
    }

    /// Whether `g` is a well-formed normal form of this group.
    pub fn contains(&self, g: &GroupElement) -> bool {
        match (self.spec.kind, g) {
            (GroupKind::Trivial, GroupElement::Trivial) => true,
            (GroupKind::CyclicFinite(n), GroupElement::Cyclic(k)) => *k < n,
            (GroupKind::IntegerLattice(d), GroupElement::Lattice(v)) => v.len() == d,
            (GroupKind::FreeGroup(k), GroupElement::Free(w)) => {
                w.iter().all(|&l| l != 0 && l.unsigned_abs() as usize <= k) && w.windows(2).all(|p| p[0] != -p[1])
            }
            (GroupKind::InfiniteDihedral, GroupElement::Dihedral { .. }) => true,
            (GroupKind::Heisenberg, GroupElement::Heisenberg(_)) => true,
            (GroupKind::SymmetricS3, GroupElement::S3(p)) => {
                let mut s = *p;
                s.sort();
                s == [0, 1, 2]
            }
            _ => false,
        }
    }

    fn check(&self, g: &GroupElement) -> Result<()> {
        if self.contains(g) {
            Ok(())
        } else {
            Err(Error::CrossGroup { left: self.name(), right: format!("{g:?}") })
        }
    }

    /// Checked product.
    pub fn mul(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.op(a, b))
    }

    /// Product of two members of this group. Operands of the wrong kind panic.
    pub fn op(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        use GroupElement::*;
        match (a, b) {
            (Trivial, Trivial) => Trivial,
            (Cyclic(x), Cyclic(y)) => {
                let GroupKind::CyclicFinite(n) = self.spec.kind else { unreachable!() };
                Cyclic((x + y) % n)
            }
            (Lattice(x), Lattice(y)) => Lattice(x.iter().zip(y).map(|(p, q)| p + q).collect()),
            (Free(x), Free(y)) => {
                let mut w = x.clone();
                for &l in y {
                    if w.last() == Some(&-l) {
                        w.pop();
                    } else {
                        w.push(l);
                    }
                }
                Free(w)
            }
            (Dihedral { rotation: a1, flip: f1 }, Dihedral { rotation: a2, flip: f2 }) => Dihedral {
                rotation: if *f1 { a1 - a2 } else { a1 + a2 },
                flip: f1 ^ f2,
            },
            (Heisenberg([a1, b1, c1]), Heisenberg([a2, b2, c2])) => Heisenberg([a1 + a2, b1 + b2, c1 + c2 + a1 * b2]),
            (S3(p), S3(q)) => S3([p[q[0] as usize], p[q[1] as usize], p[q[2] as usize]]),
            _ => panic!("operands {a:?} and {b:?} are not in the same group"),
        }
    }

    pub fn inverse(&self, a: &GroupElement) -> GroupElement {
        use GroupElement::*;
        match a {
            Trivial => Trivial,
            Cyclic(k) => {
                let GroupKind::CyclicFinite(n) = self.spec.kind else { unreachable!() };
                Cyclic((n - k) % n)
            }
            Lattice(v) => Lattice(v.iter().map(|x| -x).collect()),
            Free(w) => Free(w.iter().rev().map(|l| -l).collect()),
            Dihedral { rotation, flip: false } => Dihedral { rotation: -rotation, flip: false },
            Dihedral { flip: true, .. } => a.clone(),
            Heisenberg([x, y, z]) => Heisenberg([-x, -y, x * y - z]),
            S3(p) => {
                let mut q = [0u8; 3];
                for (i, &pi) in p.iter().enumerate() {
                    q[pi as usize] = i as u8;
                }
                S3(q)
            }
        }
    }

    /// `g^k` for any integer `k`.
    pub fn pow(&self, g: &GroupElement, k: i64) -> GroupElement {
        let base = if k < 0 { self.inverse(g) } else { g.clone() };
        let mut acc = self.identity();
        let mut sq = base;
        let mut e = k.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.op(&acc, &sq);
            }
            sq = self.op(&sq, &sq);
            e >>= 1;
        }
        acc
    }

    /// `g h g^{-1}`.
    pub fn conjugate(&self, g: &GroupElement, h: &GroupElement) -> GroupElement {
        self.op(&self.op(g, h), &self.inverse(g))
    }

    /// Cayley ball of radius `r`, ordered by BFS layer and then normal form.
    pub fn ball(&self, r: usize) -> Result<Arc<Ball>> {
        let mut cache = self.cache.lock().expect("ball cache poisoned");
        if let Some(b) = cache.balls.get(&r) {
            return Ok(b.clone());
        }
        self.extend_layers(&mut cache, r)?;
        let mut elements = Vec::new();
        let mut lengths = Vec::new();
        for (len, layer) in cache.layers.iter().take(r + 1).enumerate() {
            elements.extend(layer.iter().cloned());
            lengths.extend(std::iter::repeat(len).take(layer.len()));
        }
        let index = elements.iter().enumerate().map(|(i, g)| (g.clone(), i)).collect();
        let ball = Arc::new(Ball { radius: r, elements, lengths, index });
        cache.balls.insert(r, ball.clone());
        Ok(ball)
    }

    fn extend_layers(&self, cache: &mut BallCache, r: usize) -> Result<()> {
        if cache.layers.is_empty() {
            let id = self.identity();
            cache.seen.insert(id.clone());
            cache.layers.push(vec![id]);
        }
        while cache.layers.len() <= r {
            let last = cache.layers.last().expect("nonempty");
            let mut next = Vec::new();
            for g in last {
                for s in &self.symmetric {
                    let h = self.op(g, s);
                    if !cache.seen.contains(&h) {
                        cache.seen.insert(h.clone());
                        next.push(h);
                    }
                }
            }
            if cache.seen.len() > self.ball_cap {
                // undo the partial layer so the cache stays consistent
                for h in &next {
                    cache.seen.remove(h);
                }
                return Err(Error::BallCapExceeded { radius: r, cap: self.ball_cap });
            }
            next.sort();
            cache.layers.push(next);
        }
        Ok(())
    }

    /// Word length with respect to the symmetric generating set.
    pub fn word_length(&self, g: &GroupElement) -> Result<usize> {
        self.check(g)?;
        Ok(match g {
            GroupElement::Trivial => 0,
            GroupElement::Cyclic(k) => {
                let GroupKind::CyclicFinite(n) = self.spec.kind else { unreachable!() };
                (*k).min(n - k) as usize
            }
            GroupElement::Lattice(v) => v.iter().map(|x| x.unsigned_abs() as usize).sum(),
            GroupElement::Free(w) => w.len(),
            GroupElement::Dihedral { rotation, flip } => rotation.unsigned_abs() as usize + *flip as usize,
            GroupElement::Heisenberg(_) | GroupElement::S3(_) => self.bfs_length(g)?,
        })
    }

    fn bfs_length(&self, g: &GroupElement) -> Result<usize> {
        let mut cache = self.cache.lock().expect("ball cache poisoned");
        let mut r = 0;
        loop {
            self.extend_layers(&mut cache, r)?;
            if cache.layers[r].binary_search(g).is_ok() {
                return Ok(r);
            }
            if cache.layers[r].is_empty() {
                return Err(Error::Invariant(format!("{g} not reached by BFS")));
            }
            r += 1;
        }
    }

    /// Parses an element written in this group's notation: `1`, a `.`-separated
    /// word of `label` or `label^k` syllables, a coordinate tuple `(a,b,..)`
    /// for lattices and the Heisenberg group, or cycle notation for S3.
    pub fn parse_element(&self, s: &str) -> Result<GroupElement> {
        let s = s.trim();
        let bad = |msg: &str| Error::Parse(format!("element `{s}` of {}: {msg}", self.name()));
        if s.starts_with('(') {
            return match self.spec.kind {
                GroupKind::SymmetricS3 => parse_cycles(s).ok_or_else(|| bad("malformed cycle notation")),
                GroupKind::IntegerLattice(_) | GroupKind::Heisenberg => {
                    let inner = s.strip_prefix('(').and_then(|t| t.strip_suffix(')')).ok_or_else(|| bad("unbalanced parentheses"))?;
                    let coords = inner
                        .split(',')
                        .map(|t| t.trim().parse::<i64>())
                        .collect::<std::result::Result<Vec<_>, _>>()
                        .map_err(|_| bad("non-integer coordinate"))?;
                    let g = match self.spec.kind {
                        GroupKind::Heisenberg if coords.len() == 3 => GroupElement::Heisenberg([coords[0], coords[1], coords[2]]),
                        GroupKind::IntegerLattice(d) if coords.len() == d => GroupElement::Lattice(coords),
                        _ => return Err(bad("wrong number of coordinates")),
                    };
                    Ok(g)
                }
                _ => Err(bad("tuple notation not available for this group")),
            };
        }
        let mut acc = self.identity();
        if s == "1" || s == "e" {
            return Ok(acc);
        }
        for syllable in s.split('.') {
            let (label, exp) = match syllable.split_once('^') {
                Some((l, e)) => (l.trim(), e.trim().parse::<i64>().map_err(|_| bad("bad exponent"))?),
                None => (syllable.trim(), 1),
            };
            let gen = match label {
                "1" | "e" => self.identity(),
                _ => {
                    let i = self.spec.generators.iter().position(|g| g == label).ok_or_else(|| bad("unknown generator"))?;
                    self.generators[i].clone()
                }
            };
            acc = self.op(&acc, &self.pow(&gen, exp));
        }
        Ok(acc)
    }
}

fn parse_cycles(s: &str) -> Option<GroupElement> {
    let mut perm = [0u8, 1, 2];
    let mut rest = s;
    while !rest.is_empty() {
        let inner_end = rest.find(')')?;
        let cycle: Vec<u8> = rest.strip_prefix('(')?[..inner_end - 1]
            .chars()
            .filter(|c| !c.is_whitespace() && *c != ',')
            .map(|c| c.to_digit(10).filter(|d| (1..=3).contains(d)).map(|d| d as u8 - 1))
            .collect::<Option<_>>()?;
        // cycles are composed right to left, as products are
        let mut cyc = [0u8, 1, 2];
        for (i, &x) in cycle.iter().enumerate() {
            cyc[x as usize] = cycle[(i + 1) % cycle.len()];
        }
        perm = [perm[cyc[0] as usize], perm[cyc[1] as usize], perm[cyc[2] as usize]];
        rest = rest[inner_end + 1..].trim_start();
    }
    let mut check = perm;
    check.sort();
    (check == [0, 1, 2]).then_some(GroupElement::S3(perm))
}

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
    }
}

impl Eq for Group {}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(s: &str) -> Group {
        Group::new(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn trivial_and_cyclic_orders() {
        let g = group("trivial");
        assert_eq!(g.ball(5).unwrap().len(), 1);
        let c4 = group("cyclic:4");
        assert_eq!(c4.ball(4).unwrap().len(), 4);
        assert_eq!(c4.order(), Some(4));
    }

    #[test]
    fn rejects_zero_parameters() {
        assert!("cyclic:0".parse::<GroupSpec>().is_err());
        assert!("Z^0".parse::<GroupSpec>().is_err());
        assert!("free:0".parse::<GroupSpec>().is_err());
        assert!("klein".parse::<GroupSpec>().is_err());
    }

    #[test]
    fn heisenberg_products() {
        let h = group("heisenberg");
        let x = GroupElement::Heisenberg([1, 0, 0]);
        let y = GroupElement::Heisenberg([0, 1, 0]);
        assert_eq!(h.generators(), &[x.clone(), y.clone()]);
        assert_eq!(h.mul(&x, &y).unwrap(), GroupElement::Heisenberg([1, 1, 1]));
        assert_eq!(h.mul(&y, &x).unwrap(), GroupElement::Heisenberg([1, 1, 0]));
        let g = GroupElement::Heisenberg([2, -3, 5]);
        assert_eq!(h.inverse(&g), GroupElement::Heisenberg([-2, 3, -6 - 5]));
        assert_eq!(h.op(&g, &h.inverse(&g)), h.identity());
    }

    #[test]
    fn dihedral_relation() {
        let d = group("dihedral-inf");
        let r = d.parse_element("r").unwrap();
        let s = d.parse_element("s").unwrap();
        assert_eq!(d.mul(&s, &r).unwrap(), GroupElement::Dihedral { rotation: -1, flip: true });
        assert_eq!(d.op(&d.op(&s, &r), &s), d.inverse(&r));
    }

    #[test]
    fn inverses() {
        let z = group("Z");
        assert_eq!(z.inverse(&z.parse_element("t^3").unwrap()), z.parse_element("t^-3").unwrap());
        let s3 = group("S3");
        let c = s3.parse_element("(123)").unwrap();
        assert_eq!(s3.inverse(&c), s3.parse_element("(132)").unwrap());
    }

    #[test]
    fn cross_group_rejected() {
        let z = group("Z");
        let h = GroupElement::Heisenberg([0, 0, 1]);
        assert!(matches!(z.mul(&z.identity(), &h), Err(Error::CrossGroup { .. })));
        let c3 = group("cyclic:3");
        assert!(c3.mul(&GroupElement::Cyclic(5), &GroupElement::Cyclic(0)).is_err());
    }

    #[test]
    fn ball_sizes() {
        assert_eq!(group("Z").ball(3).unwrap().len(), 7);
        assert_eq!(group("Z^2").ball(2).unwrap().len(), 13);
        let f2 = group("free:2");
        // 1 + 4 + 12 + 36
        assert_eq!(f2.ball(3).unwrap().len(), 53);
    }

    #[test]
    fn ball_order_is_layer_then_lex() {
        let z = group("Z");
        let b = z.ball(2).unwrap();
        let shown: Vec<String> = b.iter().map(|g| g.to_string()).collect();
        assert_eq!(shown, ["1", "t^-1", "t", "t^-2", "t^2"]);
    }

    #[test]
    fn word_lengths() {
        let z = group("Z");
        assert_eq!(z.word_length(&z.parse_element("t^-5").unwrap()).unwrap(), 5);
        let z2 = group("Z^2");
        assert_eq!(z2.word_length(&z2.parse_element("(2,-1)").unwrap()).unwrap(), 3);
        let h = group("heisenberg");
        assert_eq!(h.word_length(&h.identity()).unwrap(), 0);
    }

    #[test]
    fn ball_cap_guard() {
        let f3 = Group::with_ball_cap("free:3".parse().unwrap(), 1000).unwrap();
        assert!(matches!(f3.ball(6), Err(Error::BallCapExceeded { .. })));
        assert_eq!(f3.ball(2).unwrap().len(), 1 + 6 + 30);
    }

    #[test]
    fn display_parse_roundtrip() {
        for name in ["trivial", "cyclic:5", "Z", "Z^3", "free:2", "dihedral-inf", "heisenberg", "S3"] {
            let g = group(name);
            for e in g.ball(3).unwrap().iter() {
                let shown = e.to_string();
                assert_eq!(&g.parse_element(&shown).unwrap(), e, "{name}: {shown}");
            }
        }
    }

    #[test]
    fn s3_cycle_parse() {
        let s3 = group("S3");
        assert_eq!(s3.parse_element("(12)").unwrap(), GroupElement::S3([1, 0, 2]));
        assert_eq!(s3.parse_element("(1 2 3)").unwrap(), GroupElement::S3([1, 2, 0]));
        assert_eq!(s3.ball(3).unwrap().len(), 6);
    }
}

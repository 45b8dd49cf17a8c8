use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group_ring::RingElement;
use crate::groups::{Group, GroupElement, GroupKind};
use crate::scalar::Coefficient;

/// A finite presentation whose generators are mapped into a catalog group.
/// Relator letters are `±(j + 1)` for generator `j` or its inverse.
#[derive(Clone, Debug)]
pub struct Presentation {
    group: Arc<Group>,
    labels: Vec<String>,
    images: Vec<GroupElement>,
    relators: Vec<Vec<i32>>,
}

impl Presentation {
    /// Presentation on the group's own generators. Relators are given as
    /// `.`-separated words such as `x.y.x^-1.y^-1`.
    pub fn new(group: &Arc<Group>, relators: &[&str]) -> Result<Self> {
        let labels = group.spec().generators.clone();
        let images = group.generators().to_vec();
        let relators = relators.iter().map(|r| parse_word(&labels, r)).collect::<Result<Vec<_>>>()?;
        for r in &relators {
            if r.is_empty() {
                return Err(Error::InvalidParameter("empty relator".into()));
            }
            if r.windows(2).any(|w| w[0] == -w[1]) {
                return Err(Error::InvalidParameter(format!("relator {} is not freely reduced", format_word(&labels, r))));
            }
        }
        Ok(Presentation { group: group.clone(), labels, images, relators })
    }

    /// The catalog presentation of a group.
    pub fn standard(group: &Arc<Group>) -> Result<Self> {
        let relators: Vec<String> = match group.kind() {
            GroupKind::Trivial => vec!["e".into()],
            GroupKind::CyclicFinite(n) => vec![format!("t^{n}")],
            GroupKind::IntegerLattice(d) => {
                let l = &group.spec().generators;
                let mut out = Vec::new();
                for i in 0..d {
                    for j in i + 1..d {
                        out.push(format!("{0}.{1}.{0}^-1.{1}^-1", l[i], l[j]));
                    }
                }
                out
            }
            GroupKind::FreeGroup(_) => vec![],
            GroupKind::InfiniteDihedral => vec!["s^2".into(), "s.r.s.r".into()],
            // c = [x, y] is central
            GroupKind::Heisenberg => vec![
                "x^2.y.x^-1.y^-1.x^-1.y.x.y^-1.x^-1".into(),
                "y.x.y.x^-1.y^-1.x.y^-1.x^-1".into(),
            ],
            GroupKind::SymmetricS3 => vec!["s^2".into(), "c^3".into(), "s.c.s.c".into()],
        };
        let refs: Vec<&str> = relators.iter().map(String::as_str).collect();
        Self::new(group, &refs)
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn generator_count(&self) -> usize {
        self.labels.len()
    }

    pub fn generator_images(&self) -> &[GroupElement] {
        &self.images
    }

    pub fn relators(&self) -> &[Vec<i32>] {
        &self.relators
    }

    pub fn relator_string(&self, i: usize) -> String {
        format_word(&self.labels, &self.relators[i])
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// `sum_j (dr/dx_j)(x_j - 1) - (r - 1)` for the `i`-th relator, which the
    /// fundamental formula of Fox calculus says is zero.
    pub fn fox_identity_defect<S: Coefficient>(&self, i: usize) -> RingElement<S> {
        let g = &self.group;
        let r = &self.relators[i];
        let mut acc = RingElement::zero(g);
        for (j, x) in self.images.iter().enumerate() {
            let d: RingElement<S> = fox_derivative(self, r, j);
            acc.add_translate(&g.identity(), &d.right_translate(x), &S::one());
            acc.add_translate(&g.identity(), &d, &-S::one());
        }
        acc.add_term(self.evaluate(r), -S::one());
        acc.add_term(g.identity(), S::one());
        acc
    }

    fn letter(&self, l: i32) -> GroupElement {
        let g = &self.images[l.unsigned_abs() as usize - 1];
        if l > 0 {
            g.clone()
        } else {
            self.group.inverse(g)
        }
    }

    /// Image of a word in the group.
    pub fn evaluate(&self, word: &[i32]) -> GroupElement {
        word.iter().fold(self.group.identity(), |acc, &l| self.group.op(&acc, &self.letter(l)))
    }

    /// Rejects relators that are not trivial in the target group.
    pub fn check_relators(&self) -> Result<()> {
        let id = self.group.identity();
        for (i, r) in self.relators.iter().enumerate() {
            if self.evaluate(r) != id {
                return Err(Error::PresentationMismatch { relator: self.relator_string(i), group: self.group.name() });
            }
        }
        Ok(())
    }
}

fn parse_word(labels: &[String], s: &str) -> Result<Vec<i32>> {
    let mut out = Vec::new();
    for syl in s.split('.') {
        let (label, exp) = match syl.split_once('^') {
            Some((l, e)) => (l, e.parse::<i64>().map_err(|_| Error::Parse(format!("bad exponent in `{s}`")))?),
            None => (syl, 1),
        };
        let j = labels.iter().position(|x| x == label).ok_or_else(|| Error::Parse(format!("unknown generator `{label}` in `{s}`")))?;
        let letter = (j as i32 + 1) * exp.signum() as i32;
        out.extend(std::iter::repeat(letter).take(exp.unsigned_abs() as usize));
    }
    Ok(out)
}

fn format_word(labels: &[String], w: &[i32]) -> String {
    w.iter()
        .map(|&l| {
            let label = &labels[l.unsigned_abs() as usize - 1];
            if l > 0 {
                label.clone()
            } else {
                format!("{label}^-1")
            }
        })
        .collect::<Vec<_>>()
        .join(".")
}

/// Fox derivative `dw/dx_j`: `d(x_j)/dx_j = 1`, `d(x_j^-1)/dx_j = -x_j^-1`,
/// `d(uv)/dx_j = du/dx_j + u dv/dx_j`.
pub fn fox_derivative<S: Coefficient>(presentation: &Presentation, word: &[i32], j: usize) -> RingElement<S> {
    let group = presentation.group();
    let target = j as i32 + 1;
    let mut prefix = group.identity();
    let mut out = RingElement::zero(group);
    for &l in word {
        let x = presentation.letter(l);
        if l == target {
            out.add_term(prefix.clone(), S::one());
        } else if l == -target {
            out.add_term(group.op(&prefix, &x), -S::one());
        }
        prefix = group.op(&prefix, &x);
    }
    out
}

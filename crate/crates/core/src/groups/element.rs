use std::fmt;

/// Normal form of a group element. Two elements are equal iff their normal
/// forms coincide, so the derived `Eq`, `Ord` and `Hash` are the group-level
/// notions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupElement {
    Trivial,
    /// Exponent of the generator, in `[0, n)`.
    Cyclic(u64),
    /// Integer coordinates in Z^d.
    Lattice(Vec<i64>),
    /// Freely reduced word; letter `±(i + 1)` is generator `i` or its inverse.
    Free(Vec<i32>),
    /// `r^rotation s^flip`.
    Dihedral { rotation: i64, flip: bool },
    /// Upper unitriangular integer matrix with entries `(a, b, c)`:
    /// `a` above the diagonal in row 1, `b` in row 2, `c` in the corner.
    Heisenberg([i64; 3]),
    /// Permutation of {0, 1, 2} given by its images.
    S3([u8; 3]),
}

/// Label of the `i`-th free generator.
pub fn free_label(i: usize) -> String {
    const LETTERS: [&str; 4] = ["x", "y", "z", "w"];
    if i < LETTERS.len() {
        LETTERS[i].to_string()
    } else {
        format!("g{}", i + 1)
    }
}

impl GroupElement {
    /// Feeds a canonical integer encoding of the normal form to `out`.
    pub fn encode(&self, out: &mut Vec<i64>) {
        match self {
            GroupElement::Trivial => out.push(0),
            GroupElement::Cyclic(k) => out.extend([1, *k as i64]),
            GroupElement::Lattice(v) => {
                out.extend([2, v.len() as i64]);
                out.extend(v.iter().copied());
            }
            GroupElement::Free(w) => {
                out.extend([3, w.len() as i64]);
                out.extend(w.iter().map(|&l| l as i64));
            }
            GroupElement::Dihedral { rotation, flip } => out.extend([4, *rotation, *flip as i64]),
            GroupElement::Heisenberg(m) => {
                out.push(5);
                out.extend(m.iter().copied());
            }
            GroupElement::S3(p) => {
                out.push(6);
                out.extend(p.iter().map(|&x| x as i64));
            }
        }
    }

    /// 64-bit FNV-1a digest of [`encode`](Self::encode). Stable across runs
    /// and platforms.
    pub fn stable_hash(&self) -> u64 {
        let mut words = Vec::with_capacity(4);
        self.encode(&mut words);
        fnv1a(&words)
    }
}

pub(crate) fn fnv1a(words: &[i64]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for w in words {
        for b in w.to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
    }
    h
}

fn power(f: &mut fmt::Formatter<'_>, label: &str, k: i64) -> fmt::Result {
    match k {
        1 => write!(f, "{label}"),
        _ => write!(f, "{label}^{k}"),
    }
}

fn tuple(f: &mut fmt::Formatter<'_>, xs: &[i64]) -> fmt::Result {
    write!(f, "(")?;
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{x}")?;
    }
    write!(f, ")")
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Trivial | GroupElement::Cyclic(0) => write!(f, "1"),
            GroupElement::Cyclic(k) => power(f, "t", *k as i64),
            GroupElement::Lattice(v) if v.len() == 1 => {
                if v[0] == 0 {
                    write!(f, "1")
                } else {
                    power(f, "t", v[0])
                }
            }
            GroupElement::Lattice(v) => tuple(f, v),
            GroupElement::Free(w) if w.is_empty() => write!(f, "1"),
            GroupElement::Free(w) => {
                // syllables: maximal runs of one letter
                let mut i = 0;
                while i < w.len() {
                    let letter = w[i];
                    let mut j = i;
                    while j < w.len() && w[j] == letter {
                        j += 1;
                    }
                    if i > 0 {
                        write!(f, ".")?;
                    }
                    let label = free_label(letter.unsigned_abs() as usize - 1);
                    power(f, &label, letter.signum() as i64 * (j - i) as i64)?;
                    i = j;
                }
                Ok(())
            }
            GroupElement::Dihedral { rotation, flip } => match (rotation, flip) {
                (0, false) => write!(f, "1"),
                (0, true) => write!(f, "s"),
                (a, false) => power(f, "r", *a),
                (a, true) => {
                    power(f, "r", *a)?;
                    write!(f, ".s")
                }
            },
            GroupElement::Heisenberg(m) => tuple(f, m),
            GroupElement::S3(p) => write!(f, "{}", s3_cycles(p)),
        }
    }
}

/// Cycle notation on the points 1, 2, 3; the identity is `1`.
pub(crate) fn s3_cycles(p: &[u8; 3]) -> String {
    let mut seen = [false; 3];
    let mut out = String::new();
    for start in 0..3u8 {
        if seen[start as usize] || p[start as usize] == start {
            continue;
        }
        out.push('(');
        let mut x = start;
        while !seen[x as usize] {
            seen[x as usize] = true;
            out.push(char::from(b'1' + x));
            x = p[x as usize];
        }
        out.push(')');
    }
    if out.is_empty() {
        out.push('1');
    }
    out
}

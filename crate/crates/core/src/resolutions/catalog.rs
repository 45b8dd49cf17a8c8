use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::groups::{make_group, GroupSpec};
use crate::resolutions::{
    bar_resolution_spaces, cyclic_infinite_resolution, fox_partial_resolution, lattice_resolution, periodic_cyclic_resolution,
    BarBasis, Presentation, Resolution,
};
use crate::scalar::Coefficient;

/// Resolution names as used in config files.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ResolutionName {
    /// `cyclic-inf`
    CyclicInf,
    /// `cyclic:n:N`
    Periodic { n: u64, len: usize },
    /// `fox:<group>`
    Fox(GroupSpec),
    /// `lattice:d`
    Lattice(usize),
    /// `bar:<group>:<degree>:<radius>`
    Bar { group: GroupSpec, degree: usize, radius: usize },
}

impl FromStr for ResolutionName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = |msg: &str| Error::Parse(format!("resolution `{s}`: {msg}"));
        let int = |t: &str| t.parse::<usize>().map_err(|_| bad("expected an integer"));
        if s == "cyclic-inf" {
            return Ok(ResolutionName::CyclicInf);
        }
        if let Some(rest) = s.strip_prefix("fox:") {
            return Ok(ResolutionName::Fox(rest.parse()?));
        }
        if let Some(rest) = s.strip_prefix("lattice:") {
            return Ok(ResolutionName::Lattice(int(rest)?));
        }
        if let Some(rest) = s.strip_prefix("bar:") {
            // the group name may itself contain ':'
            let mut parts = rest.rsplitn(3, ':');
            let radius = int(parts.next().ok_or_else(|| bad("missing radius"))?)?;
            let degree = int(parts.next().ok_or_else(|| bad("missing degree"))?)?;
            let group = parts.next().ok_or_else(|| bad("missing group"))?.parse()?;
            return Ok(ResolutionName::Bar { group, degree, radius });
        }
        if let Some(rest) = s.strip_prefix("cyclic:") {
            let (n, len) = rest.split_once(':').ok_or_else(|| bad("expected cyclic:n:N"))?;
            return Ok(ResolutionName::Periodic { n: int(n)? as u64, len: int(len)? });
        }
        Err(bad("unknown resolution"))
    }
}

impl fmt::Display for ResolutionName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ResolutionName::CyclicInf => write!(f, "cyclic-inf"),
            ResolutionName::Periodic { n, len } => write!(f, "cyclic:{n}:{len}"),
            ResolutionName::Fox(g) => write!(f, "fox:{g}"),
            ResolutionName::Lattice(d) => write!(f, "lattice:{d}"),
            ResolutionName::Bar { group, degree, radius } => write!(f, "bar:{group}:{degree}:{radius}"),
        }
    }
}

impl ResolutionName {
    /// Builds a matrix resolution. Bar names describe tuple spaces instead;
    /// use [`bar_spaces`](Self::bar_spaces) for those.
    pub fn build<S: Coefficient>(&self) -> Result<Resolution<S>> {
        match self {
            ResolutionName::CyclicInf => cyclic_infinite_resolution(),
            ResolutionName::Periodic { n, len } => periodic_cyclic_resolution(*n, *len),
            ResolutionName::Fox(spec) => fox_partial_resolution(&Presentation::standard(&make_group(spec.clone())?)?),
            ResolutionName::Lattice(d) => lattice_resolution(*d),
            ResolutionName::Bar { .. } => Err(Error::Unsupported(format!("`{self}` is not a matrix resolution"))),
        }
    }

    pub fn bar_spaces(&self) -> Result<BarBasis> {
        match self {
            ResolutionName::Bar { group, degree, radius } => bar_resolution_spaces(&make_group(group.clone())?, *degree, *radius),
            _ => Err(Error::Unsupported(format!("`{self}` is not a bar resolution"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    #[test]
    fn names_roundtrip() {
        for s in ["cyclic-inf", "cyclic:4:3", "fox:Z^2", "fox:free:2", "lattice:3", "bar:cyclic:4:2:3", "bar:heisenberg:1:2"] {
            let name: ResolutionName = s.parse().unwrap();
            assert_eq!(name.to_string(), s);
        }
        assert!("tor:3".parse::<ResolutionName>().is_err());
    }

    #[test]
    fn bar_name() {
        let name: ResolutionName = "bar:cyclic:2:2:1".parse().unwrap();
        assert_eq!(name.bar_spaces().unwrap().len(), 4);
        assert!(name.build::<Rational>().is_err());
    }

    #[test]
    fn builds() {
        let res: Resolution<Rational> = "fox:dihedral-inf".parse::<ResolutionName>().unwrap().build().unwrap();
        assert_eq!(res.ranks(), &[1, 2, 2]);
        assert!(res.validate().passed());
    }
}

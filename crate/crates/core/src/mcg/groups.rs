//! Structured descriptions of abstract groups and the mapping class group
//! catalog.

use std::fmt;

use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};

use super::McgError;
use crate::rational::{format_rational, Rational};

/// A direct factor of a group description.
///
/// The variant order is the canonical sort order: torus factors first (by
/// period), then the discrete factors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupAtom {
    /// Circle group `R / period Z`.
    Torus(Rational),
    Z,
    FreeAbelian(u32),
    FiniteCyclic(u32),
    /// A pure mapping class group kept as a symbol.
    SymbolicPMod { genus: u32, punctures: u32 },
    Trivial,
}

impl fmt::Display for GroupAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupAtom::Torus(p) => write!(f, "T_{{{}}}", format_rational(p)),
            GroupAtom::Z => f.write_str("Z"),
            GroupAtom::FreeAbelian(k) => write!(f, "Z^{k}"),
            GroupAtom::FiniteCyclic(n) => write!(f, "Z{n}"),
            GroupAtom::SymbolicPMod { genus, punctures } => write!(f, "PMod({genus},{punctures})"),
            GroupAtom::Trivial => f.write_str("1"),
        }
    }
}

impl Serialize for GroupAtom {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let mut m = ser.serialize_map(None)?;
        match self {
            GroupAtom::Torus(p) => {
                m.serialize_entry("kind", "torus")?;
                m.serialize_entry("period", &format_rational(p))?;
            }
            GroupAtom::Z => m.serialize_entry("kind", "Z")?,
            GroupAtom::FreeAbelian(k) => {
                m.serialize_entry("kind", "free_abelian")?;
                m.serialize_entry("rank", k)?;
            }
            GroupAtom::FiniteCyclic(n) => {
                m.serialize_entry("kind", "finite_cyclic")?;
                m.serialize_entry("order", n)?;
            }
            GroupAtom::SymbolicPMod { genus, punctures } => {
                m.serialize_entry("kind", "pmod")?;
                m.serialize_entry("genus", genus)?;
                m.serialize_entry("punctures", punctures)?;
            }
            GroupAtom::Trivial => m.serialize_entry("kind", "trivial")?,
        }
        m.end()
    }
}

/// A direct product of atoms, canonically sorted, with `Trivial` dropped
/// unless it is the only atom.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupDescription {
    atoms: Vec<GroupAtom>,
    pub presentation_note: String,
}

impl GroupDescription {
    pub fn new(atoms: impl IntoIterator<Item = GroupAtom>, note: impl Into<String>) -> Self {
        let mut atoms: Vec<GroupAtom> = atoms
            .into_iter()
            .filter(|a| *a != GroupAtom::Trivial)
            .collect();
        if atoms.is_empty() {
            atoms.push(GroupAtom::Trivial);
        }
        atoms.sort();
        GroupDescription {
            atoms,
            presentation_note: note.into(),
        }
    }

    pub fn trivial() -> Self {
        GroupDescription::new([], "")
    }

    /// Direct product of the given groups.
    pub fn product<'a>(
        factors: impl IntoIterator<Item = &'a GroupDescription>,
        note: impl Into<String>,
    ) -> Self {
        GroupDescription::new(
            factors.into_iter().flat_map(|g| g.atoms.iter().cloned()),
            note,
        )
    }

    pub fn atoms(&self) -> &[GroupAtom] {
        &self.atoms
    }

    pub fn is_trivial(&self) -> bool {
        self.atoms == [GroupAtom::Trivial]
    }

    /// Rank of the free abelian part built from `Z` and `Z^k` atoms.
    pub fn free_rank(&self) -> u32 {
        self.atoms
            .iter()
            .map(|a| match a {
                GroupAtom::Z => 1,
                GroupAtom::FreeAbelian(k) => *k,
                _ => 0,
            })
            .sum()
    }

    pub fn has_symbolic_part(&self) -> bool {
        self.atoms
            .iter()
            .any(|a| matches!(a, GroupAtom::SymbolicPMod { .. }))
    }

    pub fn pretty(&self) -> String {
        let parts: Vec<String> = self.atoms.iter().map(|a| a.to_string()).collect();
        parts.join(" (+) ")
    }
}

impl fmt::Display for GroupDescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty())
    }
}

impl Serialize for GroupDescription {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let mut m = ser.serialize_map(Some(3))?;
        m.serialize_entry("atoms", &self.atoms)?;
        m.serialize_entry("pretty", &self.pretty())?;
        m.serialize_entry("note", &self.presentation_note)?;
        m.end()
    }
}

/// A compact oriented surface with some boundary circles fixed pointwise
/// and the rest free.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SurfaceType {
    pub genus: u32,
    pub fixed_boundary: u32,
    pub free_boundary: u32,
}

impl SurfaceType {
    pub fn new(genus: u32, fixed_boundary: u32, free_boundary: u32) -> Self {
        SurfaceType {
            genus,
            fixed_boundary,
            free_boundary,
        }
    }

    pub fn boundary(&self) -> u32 {
        self.fixed_boundary + self.free_boundary
    }

    pub fn euler_characteristic(&self) -> i64 {
        2 - 2 * self.genus as i64 - self.boundary() as i64
    }

    /// Rank of `H_1`: `2g + b - 1` with boundary, `2g` without.
    pub fn homology_rank(&self) -> usize {
        let b = self.boundary() as usize;
        2 * self.genus as usize + b.saturating_sub(1)
    }
}

impl fmt::Display for SurfaceType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(genus {}, {} fixed, {} free)",
            self.genus, self.fixed_boundary, self.free_boundary
        )
    }
}

/// The mapping class group of `s` relative to its fixed boundary circles.
///
/// Boundary twists contribute `Z^k`; the remaining pure mapping class group is
/// closed form when small (trivial for the disc and the pair of pants) and
/// symbolic otherwise. The annulus with both circles fixed is `Z`, since its
/// two boundary twists coincide. Combinations with free boundary beyond the
/// disc and half-fixed annulus are rejected.
pub fn mcg_structure(s: SurfaceType) -> Result<GroupDescription, McgError> {
    let SurfaceType {
        genus: g,
        fixed_boundary: k,
        free_boundary: free,
    } = s;
    let d = match (g, k, free) {
        (0, 1, 0) => GroupDescription::new([], "disc fixing its boundary"),
        (0, 0, 1) => GroupDescription::new([], "disc"),
        (0, 1, 1) => GroupDescription::new([], "annulus fixing one boundary circle"),
        (0, 2, 0) => GroupDescription::new([GroupAtom::Z], "annulus, generated by the Dehn twist"),
        (0, 3, 0) => GroupDescription::new(
            [GroupAtom::FreeAbelian(3)],
            "pair of pants: boundary twists only, PMod(0,3) trivial",
        ),
        (0, k, 0) if k >= 4 => GroupDescription::new(
            [
                GroupAtom::FreeAbelian(k),
                GroupAtom::SymbolicPMod {
                    genus: 0,
                    punctures: k,
                },
            ],
            "PMod (+) boundary twists",
        ),
        (g, k, 0) if g >= 1 && k >= 1 => GroupDescription::new(
            [
                GroupAtom::FreeAbelian(k),
                GroupAtom::SymbolicPMod {
                    genus: g,
                    punctures: k,
                },
            ],
            "PMod (+) boundary twists",
        ),
        _ => return Err(McgError::Uncataloged(s)),
    };
    Ok(d)
}

/// Twist generators used for symbolic `PMod` factors, each with its class in
/// the basis `a_1, b_1, .., a_g, b_g, d_1, .., d_{b-1}`.
///
/// For genus `g >= 1`: twists about `a_i`, `b_i`, the chain curves
/// `a_i - a_{i+1}`, and one curve `a_g + d_j` per extra boundary circle.
/// For genus 0: twists about `d_j + d_{j+1}`. Empty when the factor has no
/// symbolic part.
pub fn pmod_generators(s: SurfaceType) -> Vec<Vec<i64>> {
    let has_symbolic = mcg_structure(s)
        .map(|d| d.has_symbolic_part())
        .unwrap_or(false);
    if !has_symbolic {
        return Vec::new();
    }
    let n = s.homology_rank();
    let g = s.genus as usize;
    let extra = n - 2 * g;
    let unit = |i: usize| {
        let mut v = vec![0i64; n];
        v[i] = 1;
        v
    };
    let mut gens = Vec::new();
    if g >= 1 {
        gens.extend((0..g).map(|i| unit(2 * i)));
        gens.extend((0..g).map(|i| unit(2 * i + 1)));
        for i in 0..g - 1 {
            let mut v = unit(2 * i);
            v[2 * i + 2] = -1;
            gens.push(v);
        }
        for j in 0..extra {
            let mut v = unit(2 * g - 2);
            v[2 * g + j] = 1;
            gens.push(v);
        }
    } else {
        for j in 0..extra.saturating_sub(1) {
            let mut v = unit(j);
            v[j + 1] = 1;
            gens.push(v);
        }
    }
    gens
}

/// Picard group of a symplectic surface, either a closed form or a symbol.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum PicValue {
    Group(GroupDescription),
    Symbolic(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymplecticReport {
    pub surface: SurfaceType,
    pub pic: PicValue,
    pub relations: Vec<String>,
}

/// `Pic(S) ≅ Out(π_1(S))` for a symplectic surface, with closed forms for
/// the sphere, disc and cylinder. All boundary circles count as ends.
pub fn symplectic_surface_picard_report(s: SurfaceType) -> SymplecticReport {
    let ends = s.boundary();
    let rel = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    let (pic, relations) = match (s.genus, ends) {
        (0, 0) => (
            PicValue::Group(GroupDescription::new([], "sphere")),
            rel(&[
                "Mod(S) ≅ Z2, generated by an orientation-reversing diffeomorphism",
                "Out(π1(S)) = {e}",
                "Pic(S) ≅ Out(π1(S)) = {e}",
            ]),
        ),
        (0, 1) => (
            PicValue::Group(GroupDescription::new([], "disc")),
            rel(&[
                "Mod(S) ≅ Z2",
                "PMod(S) ≅ Out(π1(S)) = {e}",
                "Pic(S) = {e}",
            ]),
        ),
        (0, 2) => (
            PicValue::Group(GroupDescription::new([GroupAtom::FiniteCyclic(2)], "cylinder")),
            rel(&[
                "PMod(S) = {e}",
                "Mod(S) ≅ Z2 × Z2",
                "j(Poiss(S)) ≅ PMod(S) = {e} ⊂ Z2 ≅ Out(π1(S)) ≅ Pic(S)",
            ]),
        ),
        (g, 0) => (
            PicValue::Symbolic(format!("Mod(S_{g})")),
            rel(&["Pic(S) ≅ Mod(S)", "Mod(S) ≅ Out(π1(S))"]),
        ),
        (g, b) => (
            PicValue::Symbolic(format!("Out(F_{})", 2 * g + b - 1)),
            rel(&[
                "Pic(S) ≅ Out(π1(S))",
                "j(Poiss(S)) = Pic(S, ∂S) ≅ PMod(S) ⊊ Mod(S) ⊊ Out(π1(S)) ≅ Pic(S)",
            ]),
        ),
    };
    SymplecticReport {
        surface: s,
        pic,
        relations,
    }
}

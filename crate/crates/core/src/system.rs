//! Named vector variables and the formal symbols they expose.
//!
//! A real group `x` of length `m` exposes `x[1] .. x[m]`. A complex group
//! `z` of length `N` exposes `z[j]` and its formal conjugate `zbar[j]` for
//! each `j`; the two are independent symbols (Wirtinger convention).
//!
//! Symbol ids are laid out group by group, and inside a complex group as
//! `z[1], zbar[1], z[2], zbar[2], ...`, so id order is the canonical
//! (group, index, bar) order used for term sorting.

use std::fmt;
use std::ops::Range;
use std::sync::Arc;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    Real,
    Complex,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Group {
    pub name: String,
    pub len: usize,
    pub kind: Kind,
    offset: usize,
}

impl Group {
    pub fn symbol_count(&self) -> usize {
        match self.kind {
            Kind::Real => self.len,
            Kind::Complex => 2 * self.len,
        }
    }

    pub fn symbols(&self) -> Range<Sym> {
        self.offset as Sym..(self.offset + self.symbol_count()) as Sym
    }

    /// Holomorphic (or real) symbol for 0-based index `j`.
    pub fn sym(&self, j: usize) -> Sym {
        debug_assert!(j < self.len);
        match self.kind {
            Kind::Real => (self.offset + j) as Sym,
            Kind::Complex => (self.offset + 2 * j) as Sym,
        }
    }

    /// Conjugate symbol for 0-based index `j`. Panics on a real group.
    pub fn bar(&self, j: usize) -> Sym {
        assert_eq!(self.kind, Kind::Complex, "group {} has no conjugates", self.name);
        debug_assert!(j < self.len);
        (self.offset + 2 * j + 1) as Sym
    }

    pub fn contains(&self, s: Sym) -> bool {
        self.symbols().contains(&s)
    }
}

/// Index of a formal symbol inside its `VariableSystem`.
pub type Sym = u16;

/// Decoded view of a formal symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SymbolInfo {
    pub group: usize,
    /// 0-based coordinate index.
    pub index: usize,
    pub bar: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VariableSystem {
    groups: Vec<Group>,
    nsyms: usize,
}

impl VariableSystem {
    pub fn new<S: Into<String>>(specs: impl IntoIterator<Item = (S, usize, Kind)>) -> Result<Arc<Self>> {
        let mut groups: Vec<Group> = Vec::new();
        let mut offset = 0;
        for (name, len, kind) in specs {
            let name = name.into();
            if len == 0 {
                return Err(Error::InvalidParams(format!("group `{name}` has length 0")));
            }
            if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphabetic() || c == '_') {
                return Err(Error::InvalidParams(format!("bad group name `{name}`")));
            }
            let clashes = |g: &Group| {
                g.name == name
                    || (g.kind == Kind::Complex && format!("{}bar", g.name) == name)
                    || (kind == Kind::Complex && format!("{name}bar") == g.name)
            };
            if groups.iter().any(clashes) {
                return Err(Error::DuplicateGroup(name));
            }
            let g = Group {
                name,
                len,
                kind,
                offset,
            };
            offset += g.symbol_count();
            groups.push(g);
        }
        if offset > Sym::MAX as usize {
            return Err(Error::InvalidParams("too many symbols".into()));
        }
        Ok(Arc::new(VariableSystem {
            groups,
            nsyms: offset,
        }))
    }

    pub fn builder() -> SystemBuilder {
        SystemBuilder::default()
    }

    pub fn groups(&self) -> &[Group] {
        &self.groups
    }

    pub fn symbol_count(&self) -> usize {
        self.nsyms
    }

    pub fn group_index(&self, name: &str) -> Result<usize> {
        self.groups
            .iter()
            .position(|g| g.name == name)
            .ok_or_else(|| Error::UnknownGroup(name.to_string()))
    }

    pub fn group(&self, name: &str) -> Result<&Group> {
        Ok(&self.groups[self.group_index(name)?])
    }

    pub fn group_at(&self, idx: usize) -> &Group {
        &self.groups[idx]
    }

    pub fn info(&self, s: Sym) -> SymbolInfo {
        let s = s as usize;
        let (gi, g) = self
            .groups
            .iter()
            .enumerate()
            .find(|(_, g)| s >= g.offset && s < g.offset + g.symbol_count())
            .expect("symbol out of range");
        let local = s - g.offset;
        match g.kind {
            Kind::Real => SymbolInfo {
                group: gi,
                index: local,
                bar: false,
            },
            Kind::Complex => SymbolInfo {
                group: gi,
                index: local / 2,
                bar: local % 2 == 1,
            },
        }
    }

    pub fn group_of(&self, s: Sym) -> &Group {
        &self.groups[self.info(s).group]
    }

    /// Resolve a textual symbol name such as `x`, `zbar` plus a 1-based index.
    pub fn lookup(&self, name: &str, index1: usize) -> Result<Sym> {
        let unknown = || Error::UnknownSymbol(format!("{name}[{index1}]"));
        let (g, bar) = match self.groups.iter().find(|g| g.name == name) {
            Some(g) => (g, false),
            None => {
                let base = name.strip_suffix("bar").ok_or_else(unknown)?;
                let g = self
                    .groups
                    .iter()
                    .find(|g| g.name == base && g.kind == Kind::Complex)
                    .ok_or_else(unknown)?;
                (g, true)
            }
        };
        if index1 == 0 || index1 > g.len {
            return Err(unknown());
        }
        Ok(if bar { g.bar(index1 - 1) } else { g.sym(index1 - 1) })
    }

    /// Conjugate partner of a symbol (identity on real symbols).
    pub fn conj_sym(&self, s: Sym) -> Sym {
        let info = self.info(s);
        let g = &self.groups[info.group];
        match g.kind {
            Kind::Real => s,
            Kind::Complex if info.bar => g.sym(info.index),
            Kind::Complex => g.bar(info.index),
        }
    }

    pub fn symbol_name(&self, s: Sym) -> String {
        let info = self.info(s);
        let g = &self.groups[info.group];
        if info.bar {
            format!("{}bar[{}]", g.name, info.index + 1)
        } else {
            format!("{}[{}]", g.name, info.index + 1)
        }
    }
}

#[derive(Default)]
pub struct SystemBuilder {
    specs: Vec<(String, usize, Kind)>,
}

impl SystemBuilder {
    pub fn real(mut self, name: &str, len: usize) -> Self {
        self.specs.push((name.to_string(), len, Kind::Real));
        self
    }

    pub fn complex(mut self, name: &str, len: usize) -> Self {
        self.specs.push((name.to_string(), len, Kind::Complex));
        self
    }

    pub fn build(self) -> Result<Arc<VariableSystem>> {
        VariableSystem::new(self.specs)
    }
}

impl fmt::Display for VariableSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .groups
            .iter()
            .map(|g| {
                let k = match g.kind {
                    Kind::Real => "real",
                    Kind::Complex => "complex",
                };
                format!("{}:{}:{}", g.name, g.len, k)
            })
            .collect();
        write!(f, "{}", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layout_and_lookup() {
        let sys = VariableSystem::builder().real("x", 3).complex("z", 2).build().unwrap();
        assert_eq!(sys.symbol_count(), 7);
        let z = sys.group("z").unwrap();
        assert_eq!(z.sym(0), 3);
        assert_eq!(z.bar(0), 4);
        assert_eq!(sys.lookup("zbar", 2).unwrap(), 6);
        assert_eq!(sys.lookup("x", 3).unwrap(), 2);
        assert_eq!(sys.conj_sym(5), 6);
        assert_eq!(sys.conj_sym(1), 1);
        assert_eq!(sys.symbol_name(6), "zbar[2]");
        assert!(sys.lookup("x", 4).is_err());
        assert!(sys.lookup("xbar", 1).is_err());
    }

    #[test]
    fn names_must_not_collide_with_conjugates() {
        let r = VariableSystem::builder().complex("z", 2).real("zbar", 1).build();
        assert!(matches!(r, Err(Error::DuplicateGroup(_))));
    }
}

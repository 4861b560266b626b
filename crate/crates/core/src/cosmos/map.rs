//! Maps of the base category: functions of finite sets, functors of finite categories.

use std::fmt;
use std::sync::Arc;

use super::object::{Cosmos, Obj};
use crate::error::{Error, Result};

/// A map `dom → cod`, tabulated on objects and on morphisms.
///
/// For finite sets the morphism table coincides with the object table.
#[derive(Clone)]
pub struct Map {
    dom: Obj,
    cod: Obj,
    obj: Arc<[u32]>,
    mor: Arc<[u32]>,
}

impl fmt::Debug for Map {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Map({:?} -> {:?}, {:?})",
            self.dom,
            self.cod,
            &self.obj[..]
        )
    }
}

impl Map {
    /// Builds a map from tables and checks functoriality exhaustively.
    pub fn new(dom: Obj, cod: Obj, obj: Vec<u32>, mor: Vec<u32>) -> Result<Map> {
        let m = Map::from_tables(dom, cod, obj, mor);
        m.validate()?;
        Ok(m)
    }

    /// A function between finite sets from its table of images.
    pub fn function(dom: Obj, cod: Obj, table: Vec<u32>) -> Result<Map> {
        Map::new(dom, cod, table.clone(), table)
    }

    /// Builds a map from tables without checks. Used by constructions whose
    /// outputs are correct by construction.
    pub(crate) fn from_tables(dom: Obj, cod: Obj, obj: Vec<u32>, mor: Vec<u32>) -> Map {
        let obj: Arc<[u32]> = obj.into();
        let mor: Arc<[u32]> = if dom.cosmos() == Cosmos::FinSet {
            obj.clone()
        } else {
            mor.into()
        };
        Map { dom, cod, obj, mor }
    }

    /// Builds a map from cell functions without checks.
    pub(crate) fn from_fns(
        dom: Obj,
        cod: Obj,
        fo: impl Fn(u32) -> u32,
        fm: impl Fn(u32) -> u32,
    ) -> Map {
        let obj: Vec<u32> = (0..dom.n_objs() as u32).map(fo).collect();
        let mor: Vec<u32> = if dom.cosmos() == Cosmos::FinSet {
            Vec::new()
        } else {
            (0..dom.n_mors() as u32).map(fm).collect()
        };
        Map::from_tables(dom, cod, obj, mor)
    }

    /// Domain.
    pub fn dom(&self) -> &Obj {
        &self.dom
    }

    /// Codomain.
    pub fn cod(&self) -> &Obj {
        &self.cod
    }

    /// Image of object `i`.
    pub fn on_obj(&self, i: u32) -> u32 {
        self.obj[i as usize]
    }

    /// Image of morphism `m`.
    pub fn on_mor(&self, m: u32) -> u32 {
        self.mor[m as usize]
    }

    /// The object table.
    pub fn obj_table(&self) -> &[u32] {
        &self.obj
    }

    /// The morphism table.
    pub fn mor_table(&self) -> &[u32] {
        &self.mor
    }

    /// Checks totality, range and functoriality.
    pub fn validate(&self) -> Result<()> {
        let (d, c) = (&self.dom, &self.cod);
        if d.cosmos() != c.cosmos() {
            return Err(Error::Validation("map between different cosmoses".into()));
        }
        if self.obj.len() != d.n_objs() || self.mor.len() != d.n_mors() {
            return Err(Error::Validation("map table is not total".into()));
        }
        if self.obj.iter().any(|&x| x as usize >= c.n_objs())
            || self.mor.iter().any(|&x| x as usize >= c.n_mors())
        {
            return Err(Error::Validation("map image out of range".into()));
        }
        for m in 0..d.n_mors() as u32 {
            let fm = self.on_mor(m);
            if c.src(fm) != self.on_obj(d.src(m)) || c.tgt(fm) != self.on_obj(d.tgt(m)) {
                return Err(Error::Validation(format!(
                    "map does not preserve the boundary of `{}`",
                    d.mor_label(m)
                )));
            }
        }
        for o in 0..d.n_objs() as u32 {
            if self.on_mor(d.ident(o)) != c.ident(self.on_obj(o)) {
                return Err(Error::Validation(format!(
                    "map does not preserve the identity of `{}`",
                    d.obj_label(o)
                )));
            }
        }
        for (f, g, h) in d.composable_pairs() {
            if c.compose(self.on_mor(f), self.on_mor(g)) != Some(self.on_mor(h)) {
                return Err(Error::Validation(format!(
                    "map does not preserve the composite `{};{}`",
                    d.mor_label(f),
                    d.mor_label(g)
                )));
            }
        }
        Ok(())
    }

    /// Identity map.
    pub fn identity(x: &Obj) -> Map {
        Map::from_fns(x.clone(), x.clone(), |i| i, |m| m)
    }

    /// The global element `∗ → x` at object `o`.
    pub fn point(x: &Obj, o: u32) -> Map {
        let t = x.cosmos().terminal();
        Map::from_fns(t, x.clone(), |_| o, |_| x.ident(o))
    }

    /// The unique map to the terminal object.
    pub fn to_terminal(x: &Obj) -> Map {
        let t = x.cosmos().terminal();
        Map::from_fns(x.clone(), t, |_| 0, |_| 0)
    }

    /// The unique map out of the initial object.
    pub fn from_initial(x: &Obj) -> Map {
        Map::from_fns(x.cosmos().initial(), x.clone(), |_| 0, |_| 0)
    }

    /// The constant map `dom → ∗ → cod` at object `o` of `cod`.
    pub fn constant(dom: &Obj, cod: &Obj, o: u32) -> Map {
        let id = cod.ident(o);
        Map::from_fns(dom.clone(), cod.clone(), |_| o, |_| id)
    }

    /// Diagrammatic composite: first `self`, then `g`.
    pub fn then(&self, g: &Map) -> Result<Map> {
        if self.cod != g.dom {
            return Err(Error::Composition(format!(
                "codomain {:?} differs from domain {:?}",
                self.cod, g.dom
            )));
        }
        Ok(Map::from_fns(
            self.dom.clone(),
            g.cod.clone(),
            |i| g.on_obj(self.on_obj(i)),
            |m| g.on_mor(self.on_mor(m)),
        ))
    }

    /// Strict isomorphism test: bijective on objects and on morphisms.
    pub fn is_iso(&self) -> bool {
        bijective(&self.obj, self.cod.n_objs()) && bijective(&self.mor, self.cod.n_mors())
    }

    /// The inverse of an isomorphism.
    pub fn inverse(&self) -> Result<Map> {
        if !self.is_iso() {
            return Err(Error::Validation("map is not an isomorphism".into()));
        }
        let mut obj = vec![0u32; self.obj.len()];
        for (i, &x) in self.obj.iter().enumerate() {
            obj[x as usize] = i as u32;
        }
        let mut mor = vec![0u32; self.mor.len()];
        for (i, &x) in self.mor.iter().enumerate() {
            mor[x as usize] = i as u32;
        }
        Ok(Map::from_tables(
            self.cod.clone(),
            self.dom.clone(),
            obj,
            mor,
        ))
    }

    /// True when the map is injective on objects and on morphisms.
    pub fn is_mono(&self) -> bool {
        injective(&self.obj, self.cod.n_objs()) && injective(&self.mor, self.cod.n_mors())
    }
}

/// Structural equality of maps: same domain, codomain and tables.
pub fn map_equal(f: &Map, g: &Map) -> bool {
    f.obj == g.obj && f.mor == g.mor && f.dom == g.dom && f.cod == g.cod
}

impl PartialEq for Map {
    fn eq(&self, other: &Map) -> bool {
        map_equal(self, other)
    }
}

impl Eq for Map {}

fn injective(table: &[u32], n: usize) -> bool {
    let mut seen = vec![false; n];
    for &x in table {
        if seen[x as usize] {
            return false;
        }
        seen[x as usize] = true;
    }
    true
}

fn bijective(table: &[u32], n: usize) -> bool {
    table.len() == n && injective(table, n)
}

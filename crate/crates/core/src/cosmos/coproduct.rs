//! Tagged coproducts and the extensivity toolkit: indexed coproduct maps,
//! pullback along injections, and the unique factorization through summands.

use super::limits::{pullback, Pullback};
use super::map::Map;
use super::object::{Builder, Cosmos, Label, Obj};
use crate::error::{Error, Result};

/// A coproduct whose summands are remembered together with their index labels.
///
/// Cells of the total object are the cells of the summands in order; labels
/// are prefixed by the index label, which keeps them distinct across summands.
#[derive(Clone, Debug)]
pub struct TaggedCoproduct {
    /// Index labels, one per summand.
    pub tags: Vec<Label>,
    /// Summand objects.
    pub summands: Vec<Obj>,
    /// The total object.
    pub total: Obj,
    obj_off: Vec<u32>,
    mor_off: Vec<u32>,
}

/// The canonical coproduct of a tagged family.
pub fn coproduct(cosmos: Cosmos, family: Vec<(Label, Obj)>) -> TaggedCoproduct {
    let mut b = Builder::new(cosmos);
    let mut obj_off = vec![0u32];
    let mut mor_off = vec![0u32];
    for (tag, x) in &family {
        for i in 0..x.n_objs() as u32 {
            b.obj(format!("{tag}:{}", x.obj_label(i)));
        }
        obj_off.push(obj_off.last().unwrap() + x.n_objs() as u32);
        mor_off.push(mor_off.last().unwrap() + x.n_mors() as u32);
    }
    if cosmos == Cosmos::FinCat {
        let mut ident = Vec::new();
        for (k, (tag, x)) in family.iter().enumerate() {
            let (oo, mo) = (obj_off[k], mor_off[k]);
            for m in 0..x.n_mors() as u32 {
                b.mor(
                    format!("{tag}:{}", x.mor_label(m)),
                    oo + x.src(m),
                    oo + x.tgt(m),
                );
            }
            for o in 0..x.n_objs() as u32 {
                ident.push(mo + x.ident(o));
            }
            for (f, g, h) in x.composable_pairs() {
                b.set_comp(mo + f, mo + g, mo + h);
            }
        }
        b.set_ident(ident);
    }
    let (tags, summands) = family.into_iter().unzip();
    TaggedCoproduct {
        tags,
        summands,
        total: b.finish(),
        obj_off,
        mor_off,
    }
}

impl TaggedCoproduct {
    /// Number of summands.
    pub fn len(&self) -> usize {
        self.summands.len()
    }

    /// True when there are no summands.
    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    /// Index of the summand with the given tag.
    pub fn find_tag(&self, tag: &str) -> Option<usize> {
        self.tags.iter().position(|t| t.as_ref() == tag)
    }

    /// Object index in the total of local object `o` of summand `k`.
    pub fn inject_obj(&self, k: usize, o: u32) -> u32 {
        self.obj_off[k] + o
    }

    /// Morphism index in the total of local morphism `m` of summand `k`.
    pub fn inject_mor(&self, k: usize, m: u32) -> u32 {
        self.mor_off[k] + m
    }

    /// Summand and local index of a total object.
    pub fn locate_obj(&self, o: u32) -> (usize, u32) {
        let k = self.obj_off.partition_point(|&off| off <= o) - 1;
        (k, o - self.obj_off[k])
    }

    /// Summand and local index of a total morphism.
    pub fn locate_mor(&self, m: u32) -> (usize, u32) {
        let k = self.mor_off.partition_point(|&off| off <= m) - 1;
        (k, m - self.mor_off[k])
    }

    /// The coproduct injection `ι_k`.
    pub fn injection(&self, k: usize) -> Map {
        let (oo, mo) = (self.obj_off[k], self.mor_off[k]);
        Map::from_fns(
            self.summands[k].clone(),
            self.total.clone(),
            |i| oo + i,
            |m| mo + m,
        )
    }

    /// The copairing `[f_0, …, f_n]` of maps out of the summands into a common codomain.
    pub fn copair(&self, maps: &[Map]) -> Result<Map> {
        if maps.len() != self.len() {
            return Err(Error::Validation(
                "copairing needs one map per summand".into(),
            ));
        }
        let cod = match maps.first() {
            Some(m) => m.cod().clone(),
            None => {
                return Err(Error::Validation(
                    "copairing of an empty family needs a codomain".into(),
                ))
            }
        };
        self.copair_into(&cod, maps)
    }

    /// Copairing with an explicit codomain (needed for the empty family).
    pub fn copair_into(&self, cod: &Obj, maps: &[Map]) -> Result<Map> {
        for (m, s) in maps.iter().zip(&self.summands) {
            if m.dom() != s || m.cod() != cod {
                return Err(Error::Validation(
                    "copairing component has the wrong type".into(),
                ));
            }
        }
        Ok(Map::from_fns(
            self.total.clone(),
            cod.clone(),
            |o| {
                let (k, l) = self.locate_obj(o);
                maps[k].on_obj(l)
            },
            |m| {
                let (k, l) = self.locate_mor(m);
                maps[k].on_mor(l)
            },
        ))
    }
}

/// The map `⊔_α g_i : ⊔ X_i → ⊔ Y_j` with `g_i : X_i → Y_{α(i)}`.
pub fn indexed_coproduct_map(
    src: &TaggedCoproduct,
    tgt: &TaggedCoproduct,
    alpha: &[usize],
    components: &[Map],
) -> Result<Map> {
    if alpha.len() != src.len() || components.len() != src.len() {
        return Err(Error::Validation(
            "indexed coproduct map needs one component per summand".into(),
        ));
    }
    for (i, g) in components.iter().enumerate() {
        if alpha[i] >= tgt.len()
            || g.dom() != &src.summands[i]
            || g.cod() != &tgt.summands[alpha[i]]
        {
            return Err(Error::Validation(format!(
                "component `{}` has the wrong type",
                src.tags[i]
            )));
        }
    }
    Ok(Map::from_fns(
        src.total.clone(),
        tgt.total.clone(),
        |o| {
            let (k, l) = src.locate_obj(o);
            tgt.inject_obj(alpha[k], components[k].on_obj(l))
        },
        |m| {
            let (k, l) = src.locate_mor(m);
            tgt.inject_mor(alpha[k], components[k].on_mor(l))
        },
    ))
}

/// Result of pulling a map into a coproduct back along every injection.
#[derive(Clone, Debug)]
pub struct FiberDecomposition {
    /// `Y_i`, the pullback of `g` along `ι_i`, with legs to `Y` and `X_i`.
    pub fibers: Vec<Pullback>,
    /// The components `g_i : Y_i → X_i`.
    pub components: Vec<Map>,
    /// The coproduct `⊔ Y_i`, tagged like the target coproduct.
    pub coproduct: TaggedCoproduct,
    /// The comparison `⊔ Y_i → Y`, an isomorphism by extensivity.
    pub iso: Map,
}

/// Decomposes `g : Y → ⊔ X_i` into its fibers over the summands.
pub fn fiber_decompose(g: &Map, tc: &TaggedCoproduct) -> Result<FiberDecomposition> {
    if g.cod() != &tc.total {
        return Err(Error::Validation(
            "map does not land in the coproduct".into(),
        ));
    }
    let mut fibers = Vec::with_capacity(tc.len());
    for k in 0..tc.len() {
        fibers.push(pullback(g, &tc.injection(k))?);
    }
    let components: Vec<Map> = fibers.iter().map(|p| p.p1.clone()).collect();
    let coproduct = super::coproduct::coproduct(
        g.dom().cosmos(),
        tc.tags
            .iter()
            .cloned()
            .zip(fibers.iter().map(|p| p.obj().clone()))
            .collect(),
    );
    let legs: Vec<Map> = fibers.iter().map(|p| p.p0.clone()).collect();
    let iso = coproduct.copair_into(g.dom(), &legs)?;
    Ok(FiberDecomposition {
        fibers,
        components,
        coproduct,
        iso,
    })
}

/// Given `h : ⊔ Y_j → ⊔ X_i` lying over the index map `α` (each summand `Y_j`
/// lands inside `X_{α(j)}`), returns the unique family `f_j : Y_j → X_{α(j)}`
/// with `h = ⊔_α f_j`.
pub fn extensive_factor(
    h: &Map,
    src: &TaggedCoproduct,
    tgt: &TaggedCoproduct,
    alpha: &[usize],
) -> Result<Vec<Map>> {
    if h.dom() != &src.total || h.cod() != &tgt.total {
        return Err(Error::Factorization(
            "map is not between the given coproducts".into(),
        ));
    }
    if alpha.len() != src.len() {
        return Err(Error::Factorization(
            "index map has the wrong length".into(),
        ));
    }
    let mut out = Vec::with_capacity(src.len());
    for (j, y) in src.summands.iter().enumerate() {
        let a = alpha[j];
        let mut obj = Vec::with_capacity(y.n_objs());
        for o in 0..y.n_objs() as u32 {
            let (k, l) = tgt.locate_obj(h.on_obj(src.inject_obj(j, o)));
            if k != a {
                return Err(Error::Factorization(format!(
                    "object `{}` of summand `{}` leaves summand `{}`",
                    y.obj_label(o),
                    src.tags[j],
                    tgt.tags[a]
                )));
            }
            obj.push(l);
        }
        let mut mor = Vec::with_capacity(y.n_mors());
        for m in 0..y.n_mors() as u32 {
            let (k, l) = tgt.locate_mor(h.on_mor(src.inject_mor(j, m)));
            if k != a {
                return Err(Error::Factorization(format!(
                    "morphism `{}` of summand `{}` leaves summand `{}`",
                    y.mor_label(m),
                    src.tags[j],
                    tgt.tags[a]
                )));
            }
            mor.push(l);
        }
        out.push(Map::from_tables(
            y.clone(),
            tgt.summands[a].clone(),
            obj,
            mor,
        ));
    }
    Ok(out)
}

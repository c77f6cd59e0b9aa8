//! Finite categories with precomputed composition tables, and the truncated
//! categories `ΔH_{≤N}`, `EpiΔH_{≤N}` and `ΔH₊_{≤N}`.

use std::collections::HashMap;
use std::ops::Range;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::enumerate::{enumerate_hom, HomVariant};
use super::ifas::{IfasMorphism, EMPTY};

/// Skeleton of a finite category. Morphisms are numbered by source object,
/// then target object, then a per-hom-set order; `local(f)` is the position
/// of `f` among the morphisms out of its source.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategoryTable {
    src: Vec<u32>,
    tgt: Vec<u32>,
    out_start: Vec<u32>,
    hom_start: Vec<u32>,
    identity: Vec<u32>,
    comp_off: Vec<u64>,
    comp: Vec<u32>,
}

impl CategoryTable {
    /// `homs[a][b]` is `|Hom(a, b)|`; `identity[a]` the position of the
    /// identity inside `Hom(a, a)`; `compose(g, f)` returns the global index of
    /// `g ∘ f` for global indices with `tgt f = src g`.
    pub fn build(
        homs: &[Vec<usize>],
        identity: &[usize],
        compose: impl Fn(&CategoryTable, u32, u32) -> u32 + Sync + Send,
    ) -> CategoryTable {
        let k = homs.len();
        let mut src = Vec::new();
        let mut tgt = Vec::new();
        let mut out_start = Vec::with_capacity(k + 1);
        let mut hom_start = Vec::with_capacity(k * k + 1);
        for (a, row) in homs.iter().enumerate() {
            out_start.push(src.len() as u32);
            for (b, &count) in row.iter().enumerate() {
                hom_start.push(src.len() as u32);
                src.extend(std::iter::repeat(a as u32).take(count));
                tgt.extend(std::iter::repeat(b as u32).take(count));
            }
        }
        out_start.push(src.len() as u32);
        hom_start.push(src.len() as u32);
        let identity = identity.iter().enumerate().map(|(a, &i)| hom_start[a * k + a] + i as u32).collect();
        let mut comp_off = Vec::with_capacity(src.len() + 1);
        let mut total = 0u64;
        for &b in &tgt {
            comp_off.push(total);
            total += (out_start[b as usize + 1] - out_start[b as usize]) as u64;
        }
        comp_off.push(total);
        let mut table = CategoryTable { src, tgt, out_start, hom_start, identity, comp_off, comp: Vec::new() };
        let comp: Vec<u32> = (0..table.num_morphisms() as u32)
            .into_par_iter()
            .flat_map_iter(|f| {
                let (t, c) = (&table, &compose);
                t.out(t.tgt(f)).map(move |g| c(t, g, f))
            })
            .collect();
        table.comp = comp;
        table
    }

    pub fn num_objects(&self) -> usize {
        self.out_start.len() - 1
    }

    pub fn num_morphisms(&self) -> usize {
        self.src.len()
    }

    pub fn src(&self, f: u32) -> u32 {
        self.src[f as usize]
    }

    pub fn tgt(&self, f: u32) -> u32 {
        self.tgt[f as usize]
    }

    pub fn out(&self, a: u32) -> Range<u32> {
        self.out_start[a as usize]..self.out_start[a as usize + 1]
    }

    pub fn out_degree(&self, a: u32) -> usize {
        (self.out_start[a as usize + 1] - self.out_start[a as usize]) as usize
    }

    pub fn hom(&self, a: u32, b: u32) -> Range<u32> {
        let k = self.num_objects();
        let i = a as usize * k + b as usize;
        self.hom_start[i]..self.hom_start[i + 1]
    }

    pub fn local(&self, f: u32) -> u32 {
        f - self.out_start[self.src(f) as usize]
    }

    pub fn identity(&self, a: u32) -> u32 {
        self.identity[a as usize]
    }

    pub fn is_identity(&self, f: u32) -> bool {
        self.identity[self.src(f) as usize] == f
    }

    /// `g ∘ f`. Panics unless `tgt f = src g`.
    pub fn compose(&self, g: u32, f: u32) -> u32 {
        assert_eq!(self.tgt(f), self.src(g), "morphisms are not composable");
        self.comp[(self.comp_off[f as usize] + self.local(g) as u64) as usize]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CategoryKind {
    /// `ΔH` on objects `[0..N]`.
    Full,
    /// `EpiΔH` on objects `[0..N]`.
    Epi,
    /// `ΔH₊` on objects `[-1..N]`.
    Extended,
}

impl CategoryKind {
    pub fn tag(&self) -> &'static str {
        match self {
            CategoryKind::Full => "dh",
            CategoryKind::Epi => "epidh",
            CategoryKind::Extended => "dhplus",
        }
    }
}

/// A truncated category with its morphisms and composition table.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TruncatedCategory {
    kind: CategoryKind,
    max_object: i32,
    objects: Vec<i32>,
    morphisms: Vec<IfasMorphism>,
    table: CategoryTable,
    #[serde(skip)]
    index: HashMap<IfasMorphism, u32>,
}

impl TruncatedCategory {
    pub fn new(kind: CategoryKind, max_object: usize) -> TruncatedCategory {
        let max_object = max_object as i32;
        let lowest = if kind == CategoryKind::Extended { EMPTY } else { 0 };
        let objects: Vec<i32> = (lowest..=max_object).collect();
        let variant = if kind == CategoryKind::Epi { HomVariant::Epi } else { HomVariant::All };
        let mut morphisms = Vec::new();
        let mut homs = Vec::new();
        for &a in &objects {
            let mut row = Vec::new();
            for &b in &objects {
                let h = enumerate_hom(a, b, variant);
                row.push(h.len());
                morphisms.extend(h);
            }
            homs.push(row);
        }
        let index: HashMap<IfasMorphism, u32> =
            morphisms.iter().enumerate().map(|(i, f)| (f.clone(), i as u32)).collect();
        let identity: Vec<usize> = objects
            .iter()
            .enumerate()
            .map(|(pos, &a)| {
                let id = index[&IfasMorphism::identity(a)] as usize;
                let start: usize = homs[..pos].iter().flatten().sum::<usize>() + homs[pos][..pos].iter().sum::<usize>();
                id - start
            })
            .collect();
        let table = CategoryTable::build(&homs, &identity, |_, g, f| {
            let h = morphisms[g as usize].compose_unchecked(&morphisms[f as usize]);
            index[&h]
        });
        TruncatedCategory { kind, max_object, objects, morphisms, table, index }
    }

    /// Rebuilds the lookup index after deserialization.
    pub fn restore_index(&mut self) {
        self.index = self.morphisms.iter().enumerate().map(|(i, f)| (f.clone(), i as u32)).collect();
    }

    pub fn kind(&self) -> CategoryKind {
        self.kind
    }

    pub fn max_object(&self) -> i32 {
        self.max_object
    }

    pub fn table(&self) -> &CategoryTable {
        &self.table
    }

    pub fn objects(&self) -> &[i32] {
        &self.objects
    }

    /// Object `[n]` for table position `a`.
    pub fn object(&self, a: u32) -> i32 {
        self.objects[a as usize]
    }

    /// Table position of object `[n]`.
    pub fn position(&self, n: i32) -> Option<u32> {
        self.objects.iter().position(|&o| o == n).map(|p| p as u32)
    }

    pub fn morphism(&self, f: u32) -> &IfasMorphism {
        &self.morphisms[f as usize]
    }

    pub fn morphisms(&self) -> &[IfasMorphism] {
        &self.morphisms
    }

    pub fn index_of(&self, f: &IfasMorphism) -> Option<u32> {
        self.index.get(f).copied()
    }
}

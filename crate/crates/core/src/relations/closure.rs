//! Weight-graded relation spaces and their closure under the raising and
//! lowering generators.
//!
//! Each weight block is reduced in two stages. Relations with one or two
//! terms are absorbed by a scaled union-find, which expresses every filling
//! as a multiple of a surviving representative or as zero. Everything else
//! is kept as a fully reduced dense echelon form over the surviving
//! representatives. Closure runs in rounds: new independent vectors are
//! pushed through the four generators and routed to their target blocks,
//! and all blocks are processed in parallel within a round.

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::RelationError;
use crate::action::{apply_to_terms, GeneratorLabel};
use crate::field::Field;
use crate::formal::FormalSum;
use crate::tableau::{decode_index, Shape};
use crate::weights::Weight;

/// Largest shape the relation engine accepts (`7^8` fillings).
pub const MAX_RELATION_BOXES: usize = 8;

type Sparse<E> = Vec<(u64, E)>;

/// Fillings of one shape grouped by weight.
#[derive(Debug, Clone)]
pub(crate) struct BlockIndex {
    shape: Shape,
    block_of: Vec<u32>,
    local_of: Vec<u32>,
    weights: Vec<Weight>,
    fillings: Vec<Vec<u64>>,
}

impl BlockIndex {
    pub(crate) fn new(shape: Shape) -> Result<BlockIndex, RelationError> {
        if shape.boxes() > MAX_RELATION_BOXES {
            return Err(RelationError::TooLarge(shape));
        }
        let n = shape.boxes();
        let total = 7u64.pow(n as u32);
        let weight_of = |i: u64| -> Weight { decode_index(i, n).into_iter().map(|e| e.weight()).sum() };
        let mut by_weight: BTreeMap<Weight, Vec<u64>> = BTreeMap::new();
        for i in 0..total {
            by_weight.entry(weight_of(i)).or_default().push(i);
        }
        let mut block_of = vec![0u32; total as usize];
        let mut local_of = vec![0u32; total as usize];
        let mut weights = Vec::new();
        let mut fillings = Vec::new();
        for (b, (w, list)) in by_weight.into_iter().enumerate() {
            for (l, &i) in list.iter().enumerate() {
                block_of[i as usize] = b as u32;
                local_of[i as usize] = l as u32;
            }
            weights.push(w);
            fillings.push(list);
        }
        Ok(BlockIndex {
            shape,
            block_of,
            local_of,
            weights,
            fillings,
        })
    }

    pub(crate) fn block(&self, index: u64) -> usize {
        self.block_of[index as usize] as usize
    }

    pub(crate) fn block_of_weight(&self, w: Weight) -> Option<usize> {
        self.weights.binary_search(&w).ok()
    }

    fn local(&self, index: u64) -> usize {
        self.local_of[index as usize] as usize
    }
}

/// Union-find where each element carries a factor relative to its parent:
/// `x_i = factor_i · x_parent(i)`. A dead root means its class is zero.
#[derive(Debug, Clone)]
struct ScaledUnionFind<E> {
    parent: Vec<usize>,
    factor: Vec<E>,
    dead: Vec<bool>,
}

impl<E: Clone> ScaledUnionFind<E> {
    fn new<F: Field<Elem = E>>(field: &F, n: usize) -> Self {
        ScaledUnionFind {
            parent: (0..n).collect(),
            factor: vec![field.one(); n],
            dead: vec![false; n],
        }
    }

    fn find<F: Field<Elem = E>>(&mut self, field: &F, i: usize) -> (usize, E) {
        let mut path = Vec::new();
        let mut x = i;
        while self.parent[x] != x {
            path.push(x);
            x = self.parent[x];
        }
        let root = x;
        for &node in path.iter().rev() {
            let p = self.parent[node];
            if p != root {
                self.factor[node] = field.mul(&self.factor[node], &self.factor[p]);
                self.parent[node] = root;
            }
        }
        if i == root {
            (root, field.one())
        } else {
            (root, self.factor[i].clone())
        }
    }

    /// Imposes `u·x_i + v·x_j = 0` (`v` ignored when `j` is `None`).
    fn relate<F: Field<Elem = E>>(&mut self, field: &F, u: &E, i: usize, other: Option<(&E, usize)>) {
        let (ri, fi) = self.find(field, i);
        let cu = field.mul(u, &fi);
        let Some((v, j)) = other else {
            self.dead[ri] = true;
            return;
        };
        let (rj, fj) = self.find(field, j);
        let cv = field.mul(v, &fj);
        if ri == rj {
            if !field.is_zero(&field.add(&cu, &cv)) {
                self.dead[ri] = true;
            }
            return;
        }
        match (self.dead[ri], self.dead[rj]) {
            (true, true) => {}
            (true, false) => self.dead[rj] = true,
            (false, true) => self.dead[ri] = true,
            (false, false) => {
                // x_ri = −cv/cu · x_rj
                let inv = field.inv(&cu).expect("nonzero coefficient");
                self.parent[ri] = rj;
                self.factor[ri] = field.neg(&field.mul(&cv, &inv));
            }
        }
    }
}

/// Fully reduced row echelon form over `width` columns.
#[derive(Debug, Clone)]
pub(crate) struct Echelon<E> {
    width: usize,
    rows: Vec<Vec<E>>,
    pivots: Vec<usize>,
    is_pivot: Vec<bool>,
}

impl<E: Clone> Echelon<E> {
    pub(crate) fn new(width: usize) -> Self {
        Echelon {
            width,
            rows: Vec::new(),
            pivots: Vec::new(),
            is_pivot: vec![false; width],
        }
    }

    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }

    pub(crate) fn is_full(&self) -> bool {
        self.rows.len() == self.width
    }

    pub(crate) fn reduce<F: Field<Elem = E>>(&self, field: &F, v: &mut [E]) {
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            if field.is_zero(&v[pc]) {
                continue;
            }
            let c = v[pc].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !field.is_zero(r) {
                    *x = field.sub_mul(x, &c, r);
                }
            }
        }
    }

    /// Adds `v` to the span; returns the normalized reduced vector when it
    /// was independent.
    pub(crate) fn insert<F: Field<Elem = E>>(&mut self, field: &F, mut v: Vec<E>) -> Option<Vec<E>> {
        if self.is_full() {
            return None;
        }
        self.reduce(field, &mut v);
        let pc = v.iter().position(|x| !field.is_zero(x))?;
        let inv = field.inv(&v[pc]).expect("nonzero pivot");
        for x in v.iter_mut() {
            if !field.is_zero(x) {
                *x = field.mul(x, &inv);
            }
        }
        for row in self.rows.iter_mut() {
            if field.is_zero(&row[pc]) {
                continue;
            }
            let c = row[pc].clone();
            for (x, r) in row.iter_mut().zip(&v) {
                if !field.is_zero(r) {
                    *x = field.sub_mul(x, &c, r);
                }
            }
        }
        self.rows.push(v.clone());
        self.pivots.push(pc);
        self.is_pivot[pc] = true;
        Some(v)
    }

    pub(crate) fn free_columns(&self) -> Vec<usize> {
        (0..self.width).filter(|c| !self.is_pivot[*c]).collect()
    }

    pub(crate) fn rows(&self) -> &[Vec<E>] {
        &self.rows
    }
}

/// How a filling reads after the union-find stage.
#[derive(Debug, Clone)]
enum Resolved<E> {
    Zero,
    /// `factor · (surviving column)`.
    Column(usize, E),
}

#[derive(Debug, Clone)]
struct Block<E> {
    id: usize,
    uf: ScaledUnionFind<E>,
    resolved: Vec<Resolved<E>>,
    /// Local filling index of each surviving column.
    live: Vec<usize>,
    echelon: Echelon<E>,
}

impl<E: Clone + Send + Sync> Block<E> {
    fn new<F: Field<Elem = E>>(field: &F, id: usize, size: usize) -> Self {
        Block {
            id,
            uf: ScaledUnionFind::new(field, size),
            resolved: Vec::new(),
            live: Vec::new(),
            echelon: Echelon::new(0),
        }
    }

    fn finalize<F: Field<Elem = E>>(&mut self, field: &F) {
        let n = self.uf.parent.len();
        let roots: Vec<(usize, E)> = (0..n).map(|i| self.uf.find(field, i)).collect();
        let mut column = vec![usize::MAX; n];
        for (i, (r, _)) in roots.iter().enumerate() {
            if *r == i && !self.uf.dead[i] {
                column[i] = self.live.len();
                self.live.push(i);
            }
        }
        self.resolved = roots
            .into_iter()
            .map(|(r, f)| {
                if self.uf.dead[r] {
                    Resolved::Zero
                } else {
                    Resolved::Column(column[r], f)
                }
            })
            .collect();
        self.echelon = Echelon::new(self.live.len());
    }

    fn uf_rank(&self) -> usize {
        self.resolved.len() - self.live.len()
    }
}

/// A weight-graded subspace `R ⊆ V_λ`.
#[derive(Debug, Clone)]
pub struct RelationBasis<F: Field> {
    field: F,
    index: BlockIndex,
    blocks: Vec<Block<F::Elem>>,
    closed: bool,
}

impl<F: Field> RelationBasis<F> {
    /// Span of `generators`, closed under the four raising/lowering
    /// generators when `close` is set. Without closure every generator must
    /// be weight-homogeneous; with it, generators are split into weight
    /// components, which is valid because a stable subspace is also stable
    /// under `h_α = [e_α, f_α]` and `h_β`.
    pub fn build(
        field: &F,
        shape: Shape,
        generators: impl IntoIterator<Item = FormalSum<i64>>,
        close: bool,
    ) -> Result<Self, RelationError> {
        let index = BlockIndex::new(shape)?;
        let nblocks = index.weights.len();
        let mut blocks: Vec<Block<F::Elem>> = index
            .fillings
            .iter()
            .enumerate()
            .map(|(id, f)| Block::new(field, id, f.len()))
            .collect();
        let mut inbox: Vec<Vec<Sparse<F::Elem>>> = vec![Vec::new(); nblocks];

        for g in generators {
            if g.shape() != shape {
                return Err(RelationError::MixedShapes(shape, g.shape()));
            }
            let mut parts: BTreeMap<usize, Sparse<F::Elem>> = BTreeMap::new();
            for (i, c) in g.terms() {
                let c = field.from_i64(*c);
                if !field.is_zero(&c) {
                    parts.entry(index.block(i)).or_default().push((i, c));
                }
            }
            if !close && parts.len() > 1 {
                return Err(RelationError::Inhomogeneous);
            }
            for (b, part) in parts {
                match part.as_slice() {
                    [(i, u)] => blocks[b].uf.relate(field, u, index.local(*i), None),
                    [(i, u), (j, v)] => blocks[b]
                        .uf
                        .relate(field, u, index.local(*i), Some((v, index.local(*j)))),
                    _ => inbox[b].push(part),
                }
            }
        }
        blocks.par_iter_mut().for_each(|b| b.finalize(field));

        let mut basis = RelationBasis {
            field: field.clone(),
            index,
            blocks,
            closed: close,
        };
        if close {
            let images: Vec<Vec<(usize, Sparse<F::Elem>)>> = (0..nblocks)
                .into_par_iter()
                .map(|b| {
                    let mut out = Vec::new();
                    for rel in basis.union_find_relations(b) {
                        basis.push_images(&rel, &mut out);
                    }
                    out
                })
                .collect();
            for list in images {
                for (b, v) in list {
                    inbox[b].push(v);
                }
            }
        }
        basis.run(inbox);
        Ok(basis)
    }

    fn run(&mut self, mut inbox: Vec<Vec<Sparse<F::Elem>>>) {
        while inbox.iter().any(|v| !v.is_empty()) {
            let field = &self.field;
            let index = &self.index;
            let close = self.closed;
            let n = index.shape.boxes();
            let produced: Vec<Vec<(usize, Sparse<F::Elem>)>> = self
                .blocks
                .par_iter_mut()
                .zip(inbox.into_par_iter())
                .map(|(block, vectors)| {
                    let mut out = Vec::new();
                    for v in vectors {
                        if block.echelon.is_full() {
                            break;
                        }
                        let dense = canonicalize(field, index, block, &v);
                        if let Some(new) = block.echelon.insert(field, dense) {
                            if close {
                                let sparse = to_sparse(field, index, block, &new);
                                images_into(field, index, n, &sparse, &mut out);
                            }
                        }
                    }
                    out
                })
                .collect();
            inbox = vec![Vec::new(); self.blocks.len()];
            for list in produced {
                for (b, v) in list {
                    inbox[b].push(v);
                }
            }
        }
    }

    fn push_images(&self, v: &Sparse<F::Elem>, out: &mut Vec<(usize, Sparse<F::Elem>)>) {
        images_into(&self.field, &self.index, self.index.shape.boxes(), v, out);
    }

    /// The relations recorded by the union-find stage of block `b`, as
    /// sparse global vectors.
    fn union_find_relations(&self, b: usize) -> Vec<Sparse<F::Elem>> {
        let block = &self.blocks[b];
        let fillings = &self.index.fillings[b];
        let f = &self.field;
        let mut out = Vec::new();
        for (i, r) in block.resolved.iter().enumerate() {
            match r {
                Resolved::Zero => out.push(vec![(fillings[i], f.one())]),
                Resolved::Column(c, factor) => {
                    let root = block.live[*c];
                    if root != i {
                        out.push(vec![(fillings[i], f.one()), (fillings[root], f.neg(factor))]);
                    }
                }
            }
        }
        out
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn shape(&self) -> Shape {
        self.index.shape
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn rank(&self) -> usize {
        self.blocks.iter().map(|b| b.uf_rank() + b.echelon.rank()).sum()
    }

    /// `(weight, fillings of that weight, rank of R at that weight)`, sorted
    /// by weight.
    pub fn graded_ranks(&self) -> Vec<(Weight, usize, usize)> {
        self.index
            .weights
            .iter()
            .zip(&self.blocks)
            .zip(&self.index.fillings)
            .map(|((w, b), f)| (*w, f.len(), b.uf_rank() + b.echelon.rank()))
            .collect()
    }

    /// Whether `x` lies in the span.
    pub fn contains(&self, x: &FormalSum<F::Elem>) -> Result<bool, RelationError> {
        if x.shape() != self.shape() {
            return Err(RelationError::MixedShapes(self.shape(), x.shape()));
        }
        let mut parts: BTreeMap<usize, Sparse<F::Elem>> = BTreeMap::new();
        for (i, c) in x.terms() {
            parts.entry(self.index.block(i)).or_default().push((i, c.clone()));
        }
        Ok(parts.into_iter().all(|(b, v)| self.residual_is_zero(b, &v)))
    }

    fn residual_is_zero(&self, b: usize, v: &Sparse<F::Elem>) -> bool {
        let block = &self.blocks[b];
        let mut dense = canonicalize(&self.field, &self.index, block, v);
        block.echelon.reduce(&self.field, &mut dense);
        dense.iter().all(|x| self.field.is_zero(x))
    }

    /// Applies each raising/lowering generator to every stored relation and
    /// reports whether all images stay in the span.
    pub fn is_stable(&self) -> bool {
        (0..self.blocks.len()).into_par_iter().all(|b| {
            let block = &self.blocks[b];
            let mut rels = self.union_find_relations(b);
            rels.extend(
                block
                    .echelon
                    .rows()
                    .iter()
                    .map(|r| to_sparse(&self.field, &self.index, block, r)),
            );
            rels.iter().all(|rel| {
                let mut out = Vec::new();
                self.push_images(rel, &mut out);
                out.iter().all(|(t, v)| self.residual_is_zero(*t, v))
            })
        })
    }

    pub(crate) fn block_of_weight(&self, w: Weight) -> Option<usize> {
        self.index.block_of_weight(w)
    }

    pub(crate) fn block_of_index(&self, i: u64) -> usize {
        self.index.block(i)
    }

    pub(crate) fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Coordinates of `v` modulo the span, on the block's free columns.
    /// The free columns form a basis of the quotient at this weight.
    pub(crate) fn quotient_coordinates(&self, b: usize, v: &[(u64, F::Elem)]) -> Vec<F::Elem> {
        let block = &self.blocks[b];
        let mut dense = canonicalize(&self.field, &self.index, block, &v.to_vec());
        block.echelon.reduce(&self.field, &mut dense);
        block
            .echelon
            .free_columns()
            .into_iter()
            .map(|c| dense[c].clone())
            .collect()
    }

    pub(crate) fn quotient_dimension_at(&self, b: usize) -> usize {
        let block = &self.blocks[b];
        block.live.len() - block.echelon.rank()
    }
}

fn canonicalize<F: Field>(field: &F, index: &BlockIndex, block: &Block<F::Elem>, v: &Sparse<F::Elem>) -> Vec<F::Elem> {
    let mut dense = vec![field.zero(); block.live.len()];
    for (i, c) in v {
        if let Resolved::Column(col, factor) = &block.resolved[index.local(*i)] {
            dense[*col] = field.add(&dense[*col], &field.mul(c, factor));
        }
    }
    dense
}

fn to_sparse<F: Field>(field: &F, index: &BlockIndex, block: &Block<F::Elem>, dense: &[F::Elem]) -> Sparse<F::Elem> {
    let fillings = &index.fillings[block.id];
    dense
        .iter()
        .enumerate()
        .filter(|(_, x)| !field.is_zero(x))
        .map(|(c, x)| (fillings[block.live[c]], x.clone()))
        .collect()
}

/// Pushes the four generator images of a weight-homogeneous `v`, tagged
/// with their target block.
fn images_into<F: Field>(
    field: &F,
    index: &BlockIndex,
    n: usize,
    v: &Sparse<F::Elem>,
    out: &mut Vec<(usize, Sparse<F::Elem>)>,
) {
    for g in GeneratorLabel::RAISING_LOWERING {
        let mut acc: BTreeMap<u64, F::Elem> = BTreeMap::new();
        apply_to_terms(field, g, n, v.iter().map(|(i, c)| (*i, c)), |t, c| {
            let slot = acc.entry(t).or_insert_with(|| field.zero());
            *slot = field.add(slot, &c);
        });
        let image: Sparse<F::Elem> = acc.into_iter().filter(|(_, c)| !field.is_zero(c)).collect();
        if let Some((first, _)) = image.first() {
            out.push((index.block(*first), image));
        }
    }
}

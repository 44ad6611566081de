//! Tensor products of complexes, complex homomorphisms, projections, the
//! universal map into a product and induced maps of links.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph_products::{gcd, lcm, lift_cycle, tensor_product, universal_factor_graph, Factor, GraphProduct};
use crate::graph_products::tensor_projection;
use crate::hom::{is_graph_homomorphism, GraphHom};
use crate::multigraph::{Dart, VertexId};
use crate::polycomplex::{Complex, Corner, Face, FaceId, Flag};
use crate::walk::Traversal;

/// Names the product face `f^{i,delta}_{alpha,beta}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProductFaceLabel {
    pub alpha: FaceId,
    pub beta: FaceId,
    pub i: u32,
    pub delta: u8,
}

/// Where a face goes: its boundary step `k` lands on step `offset + k` of
/// `face` (read modulo its length), or on the reverse of step
/// `offset - 1 - k` when `reflect` is set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FaceImage {
    pub face: FaceId,
    pub offset: u32,
    pub reflect: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ComplexHom {
    pub graph: GraphHom,
    pub face_map: Vec<FaceImage>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HomOptions {
    /// Allow face maps that reverse boundary orientation.
    pub allow_reflection: bool,
}

impl Default for HomOptions {
    fn default() -> Self {
        HomOptions {
            allow_reflection: true,
        }
    }
}

impl FaceImage {
    /// Target step hit by source step `k`.
    pub fn step(&self, target: &Complex, k: usize) -> Traversal {
        let steps = &target.face(self.face).boundary.steps;
        let n = steps.len() as i64;
        let (off, k) = (self.offset as i64, k as i64);
        if self.reflect {
            steps[(off - 1 - k).rem_euclid(n) as usize].reversed()
        } else {
            steps[(off + k).rem_euclid(n) as usize]
        }
    }

    /// Target corner position of source corner `j`.
    pub fn corner(&self, target: &Complex, j: usize) -> u32 {
        let n = target.face_len(self.face) as i64;
        let j = j as i64;
        let off = self.offset as i64;
        (if self.reflect { off - j } else { off + j }).rem_euclid(n) as u32
    }
}

impl ComplexHom {
    pub fn identity(x: &Complex) -> ComplexHom {
        ComplexHom {
            graph: GraphHom::identity(x.skeleton()),
            face_map: x
                .face_ids()
                .map(|face| FaceImage {
                    face,
                    offset: 0,
                    reflect: false,
                })
                .collect(),
        }
    }

    pub fn vertex(&self, v: VertexId) -> VertexId {
        self.graph.vertex(v)
    }

    pub fn dart(&self, d: Dart) -> Dart {
        self.graph.dart(d)
    }

    pub fn face(&self, f: FaceId) -> FaceImage {
        self.face_map[f.index()]
    }

    pub fn corner(&self, target: &Complex, c: Corner) -> Corner {
        let img = self.face(c.face);
        Corner {
            face: img.face,
            position: img.corner(target, c.position as usize),
        }
    }

    pub fn flag(&self, target: &Complex, f: Flag) -> Flag {
        let img = self.face(f.corner.face);
        Flag {
            corner: self.corner(target, f.corner),
            side: f.side ^ img.reflect as u8,
        }
    }

    /// `next` after `self`; `next_target` is the codomain of `next`.
    pub fn then(&self, next: &ComplexHom, next_target: &Complex) -> ComplexHom {
        let face_map = self
            .face_map
            .iter()
            .map(|a| {
                let b = next.face(a.face);
                let n = next_target.face_len(b.face) as i64;
                let sign = if b.reflect { -1 } else { 1 };
                FaceImage {
                    face: b.face,
                    offset: (b.offset as i64 + sign * a.offset as i64).rem_euclid(n) as u32,
                    reflect: a.reflect ^ b.reflect,
                }
            })
            .collect();
        ComplexHom {
            graph: self.graph.then(&next.graph),
            face_map,
        }
    }

    /// Inverse of a bijective map from `source`.
    pub fn inverse(&self, source: &Complex) -> ComplexHom {
        let mut face_map = vec![
            FaceImage {
                face: FaceId(0),
                offset: 0,
                reflect: false
            };
            self.face_map.len()
        ];
        for (f, img) in self.face_map.iter().enumerate() {
            let n = source.face_len(FaceId(f as u32)) as u32;
            face_map[img.face.index()] = FaceImage {
                face: FaceId(f as u32),
                offset: if img.reflect { img.offset } else { (n - img.offset) % n },
                reflect: img.reflect,
            };
        }
        ComplexHom {
            graph: self.graph.inverse(),
            face_map,
        }
    }

    pub fn is_bijective(&self, source: &Complex, target: &Complex) -> bool {
        let mut seen = vec![false; target.face_count()];
        self.graph.is_bijective(target.skeleton())
            && self.face_map.len() == target.face_count()
            && self.face_map.iter().enumerate().all(|(f, img)| {
                img.face.index() < seen.len()
                    && source.face_len(FaceId(f as u32)) == target.face_len(img.face)
                    && !std::mem::replace(&mut seen[img.face.index()], true)
            })
    }
}

pub fn is_complex_homomorphism(source: &Complex, target: &Complex, h: &ComplexHom) -> bool {
    is_complex_homomorphism_with(source, target, h, HomOptions::default())
}

pub fn is_complex_homomorphism_with(
    source: &Complex,
    target: &Complex,
    h: &ComplexHom,
    opts: HomOptions,
) -> bool {
    if !is_graph_homomorphism(source.skeleton(), target.skeleton(), &h.graph) {
        return false;
    }
    if h.face_map.len() != source.face_count() {
        return false;
    }
    source.face_ids().all(|f| {
        let img = h.face(f);
        if img.face.index() >= target.face_count() || (img.reflect && !opts.allow_reflection) {
            return false;
        }
        let (n, m) = (source.face_len(f), target.face_len(img.face));
        n % m == 0
            && (img.offset as usize) < m
            && source
                .face(f)
                .boundary
                .steps
                .iter()
                .enumerate()
                .all(|(k, &t)| h.graph.traversal(t) == img.step(target, k))
    })
}

/// A binary complex tensor product with its factors. Faces are ordered by
/// `(alpha, beta, i, delta)`.
#[derive(Clone, Debug)]
pub struct ComplexProduct {
    pub complex: Complex,
    pub graph: GraphProduct,
    pub left: Complex,
    pub right: Complex,
    labels: Vec<ProductFaceLabel>,
    pair_base: Vec<usize>,
}

impl ComplexProduct {
    pub fn vertex(&self, a: VertexId, b: VertexId) -> VertexId {
        self.graph.vertex(a, b)
    }

    pub fn coords(&self, v: VertexId) -> (VertexId, VertexId) {
        self.graph.coords(v)
    }

    pub fn label(&self, f: FaceId) -> ProductFaceLabel {
        self.labels[f.index()]
    }

    pub fn labels(&self) -> &[ProductFaceLabel] {
        &self.labels
    }

    pub fn face(&self, l: ProductFaceLabel) -> FaceId {
        let base = self.pair_base[l.alpha.index() * self.right.face_count() + l.beta.index()];
        FaceId((base + 2 * l.i as usize + l.delta as usize) as u32)
    }
}

pub fn complex_tensor_product(x: &Complex, y: &Complex) -> ComplexProduct {
    let graph = tensor_product(x.skeleton(), y.skeleton());
    let mut skeleton_faces = Vec::new();
    let mut labels = Vec::new();
    let mut pair_base = Vec::new();
    for alpha in x.face_ids() {
        for beta in y.face_ids() {
            pair_base.push(labels.len());
            let (fa, fb) = (x.face(alpha), y.face(beta));
            let g = gcd(fa.len(), fb.len());
            for i in 0..g {
                for delta in 0..2u8 {
                    let boundary = lift_cycle(&graph, &fa.boundary, &fb.boundary, i, delta)
                        .expect("face boundaries are closed and i < gcd");
                    skeleton_faces.push(Face {
                        name: format!("({},{})[{},{}]", fa.name, fb.name, i, delta),
                        boundary,
                    });
                    labels.push(ProductFaceLabel {
                        alpha,
                        beta,
                        i: i as u32,
                        delta,
                    });
                }
            }
        }
    }
    let complex = Complex::new(graph.graph.clone(), skeleton_faces).expect("lifted cycles are closed");
    ComplexProduct {
        complex,
        graph,
        left: x.clone(),
        right: y.clone(),
        labels,
        pair_base,
    }
}

pub fn complex_projection(p: &ComplexProduct, which: Factor) -> ComplexHom {
    let face_map = p
        .labels
        .iter()
        .map(|l| match which {
            Factor::Left => FaceImage {
                face: l.alpha,
                offset: 0,
                reflect: false,
            },
            Factor::Right => FaceImage {
                face: l.beta,
                offset: l.i,
                reflect: l.delta == 1,
            },
        })
        .collect();
    ComplexHom {
        graph: tensor_projection(&p.graph, which),
        face_map,
    }
}

/// The map into `p` whose projections are `phi` and `psi`, both homomorphisms
/// from one source. `None` if they disagree on face lengths.
pub fn universal_factor_complex(p: &ComplexProduct, phi: &ComplexHom, psi: &ComplexHom) -> Option<ComplexHom> {
    let graph = universal_factor_graph(&p.graph, &phi.graph, &psi.graph);
    let mut face_map = Vec::with_capacity(phi.face_map.len());
    for (a, b) in phi.face_map.iter().zip(&psi.face_map) {
        let na = p.left.face_len(a.face);
        let nb = p.right.face_len(b.face);
        let g = gcd(na, nb);
        let delta = (a.reflect ^ b.reflect) as u8;
        let sign: i64 = if delta == 0 { 1 } else { -1 };
        let found = (0..nb / g).find_map(|t| {
            let off = a.offset as usize + na * t;
            let i = (b.offset as i64 - sign * off as i64).rem_euclid(nb as i64) as usize;
            (i < g).then_some((off, i))
        });
        let (off, i) = found?;
        face_map.push(FaceImage {
            face: p.face(ProductFaceLabel {
                alpha: a.face,
                beta: b.face,
                i: i as u32,
                delta,
            }),
            offset: off as u32,
            reflect: a.reflect,
        });
    }
    Some(ComplexHom { graph, face_map })
}

/// The map of links `L(source, v) -> L(target, h(v))` induced by `h`.
pub fn induced_link_homomorphism(
    source: &Complex,
    target: &Complex,
    h: &ComplexHom,
    v: VertexId,
) -> Result<GraphHom> {
    let from = source.link(v)?;
    let to = target.link(h.vertex(v))?;
    let at: HashMap<Dart, usize> = to.darts.iter().enumerate().map(|(i, &d)| (d, i)).collect();
    let corner_at: HashMap<Corner, usize> = to.corners.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let vertex_map = from
        .darts
        .iter()
        .map(|&d| at.get(&h.dart(d)).map(|&i| VertexId(i as u32)))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::InvalidWalk("dart image is not at the image vertex".into()))?;
    let mut dart_map = Vec::with_capacity(2 * from.corners.len());
    for &c in &from.corners {
        let img = h.corner(target, c);
        let e = *corner_at
            .get(&img)
            .ok_or_else(|| Error::InvalidWalk("corner image is not at the image vertex".into()))?;
        let flip = h.face(c.face).reflect as u8;
        for side in 0..2 {
            dart_map.push(Dart::new(crate::multigraph::EdgeId(e as u32), side ^ flip));
        }
    }
    Ok(GraphHom { vertex_map, dart_map })
}

/// An iterated product `((X1 ⊗ X2) ⊗ X3) ⊗ ...` with its projections.
#[derive(Clone, Debug)]
pub struct TensorProduct {
    pub factors: Vec<Complex>,
    pub stages: Vec<ComplexProduct>,
    projections: Vec<ComplexHom>,
}

impl TensorProduct {
    pub fn new(factors: Vec<Complex>) -> Result<TensorProduct> {
        let first = factors
            .first()
            .ok_or_else(|| Error::BadParameter("a product needs at least one factor".into()))?
            .clone();
        let mut stages: Vec<ComplexProduct> = Vec::new();
        for y in &factors[1..] {
            let acc = stages.last().map_or(&first, |s| &s.complex);
            stages.push(complex_tensor_product(acc, y));
        }
        let m = factors.len();
        let mut projections = vec![ComplexHom::identity(&first); m];
        if m > 1 {
            // Walk down the stages, carrying the projection onto each partial product.
            let mut down = ComplexHom::identity(&stages[m - 2].complex);
            for k in (1..m).rev() {
                let stage = &stages[k - 1];
                projections[k] = down.then(&complex_projection(stage, Factor::Right), &stage.right);
                down = down.then(&complex_projection(stage, Factor::Left), &stage.left);
            }
            projections[0] = down;
        }
        Ok(TensorProduct {
            factors,
            stages,
            projections,
        })
    }

    pub fn complex(&self) -> &Complex {
        self.stages.last().map_or(&self.factors[0], |s| &s.complex)
    }

    pub fn projection(&self, i: usize) -> &ComplexHom {
        &self.projections[i]
    }

    pub fn vertex_coords(&self, v: VertexId) -> Vec<VertexId> {
        self.projections.iter().map(|p| p.vertex(v)).collect()
    }

    pub fn vertex(&self, coords: &[VertexId]) -> VertexId {
        let mut v = coords[0];
        for (k, stage) in self.stages.iter().enumerate() {
            v = stage.vertex(v, coords[k + 1]);
        }
        v
    }

    /// Images of a product face in every factor.
    pub fn face_generators(&self, f: FaceId) -> Vec<FaceImage> {
        self.projections.iter().map(|p| p.face(f)).collect()
    }

    /// The map into the product whose projections are `maps`.
    pub fn universal(&self, maps: &[ComplexHom]) -> Option<ComplexHom> {
        let mut acc = maps.first()?.clone();
        for (stage, m) in self.stages.iter().zip(&maps[1..]) {
            acc = universal_factor_complex(stage, &acc, m)?;
        }
        Some(acc)
    }
}

/// Closed-form cell counts of a product: vertices, edges, faces.
pub fn product_counts(x: &Complex, y: &Complex) -> (usize, usize, usize) {
    let faces = x
        .faces()
        .iter()
        .flat_map(|a| y.faces().iter().map(move |b| 2 * gcd(a.len(), b.len())))
        .sum();
    (
        x.skeleton().vertex_count() * y.skeleton().vertex_count(),
        2 * x.skeleton().edge_count() * y.skeleton().edge_count(),
        faces,
    )
}

/// Length of every face generated by a face pair.
pub fn product_face_length(n: usize, m: usize) -> usize {
    lcm(n, m)
}

//! One quantifier layer over a Boolean subalgebra of a model space.
//!
//! Forgetting a window variable projects the space onto a smaller one; the
//! direct images of the algebra's extents (or their counting refinements
//! valued in a semiring) generate a Boolean subalgebra over the smaller
//! space. The canonical map from the smaller space sends a point to the
//! trace of its fiber on the dual of the original algebra: a subset of the
//! dual for plain existence, a measure on the dual in the semiring case.
//! The verifiers below check, by exhausting all points, that the kernel of
//! that map recovers exactly the dual of the layered algebra.

use std::collections::HashMap;

use crate::bitset::BitSet;
use crate::caps::Caps;
use crate::fo::algebra::{generated_subalgebra, SubAlgebra};
use crate::fo::space::{direct_image, preimage, ModelSpace};
use crate::layers::measure::{integrate_pushforward, Measure};
use crate::layers::semiring::SemiringTable;
use crate::layers::LayerError;

/// Where a layer generator came from: the algebra element whose image was
/// taken, and the semiring element it was compared against (absent for the
/// plain existential layer).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayerGen {
    pub source: usize,
    pub k: Option<usize>,
}

pub struct Layer {
    /// The space with the chosen variable forgotten.
    pub target: ModelSpace,
    /// Projection of source points onto target points.
    pub projection: Vec<usize>,
    /// The generated subalgebra over the target space.
    pub sub: SubAlgebra,
    /// Generator extents before closure, aligned with `provenance`.
    pub generator_extents: Vec<BitSet>,
    pub provenance: Vec<LayerGen>,
}

fn project_space(
    space: &ModelSpace,
    var: usize,
) -> Result<(ModelSpace, Vec<usize>), LayerError> {
    if !space.vars().contains(&var) {
        return Err(LayerError::IndexOutOfWindow(var));
    }
    Ok(space.project(var)?)
}

fn check_ambient(b: &SubAlgebra, space: &ModelSpace) {
    assert!(
        b.blocks.is_empty() || b.space_len() == space.len(),
        "algebra is not over this space"
    );
}

/// The subalgebra of the smaller space generated by the direct images of
/// all elements of `b` under forgetting `var`.
pub fn exists_layer(
    b: &SubAlgebra,
    space: &ModelSpace,
    var: usize,
    caps: &Caps,
) -> Result<Layer, LayerError> {
    check_ambient(b, space);
    let (target, projection) = project_space(space, var)?;
    let mut generator_extents = Vec::with_capacity(b.algebra.len());
    let mut provenance = Vec::with_capacity(b.algebra.len());
    for (e, extent) in b.extents.iter().enumerate() {
        generator_extents.push(direct_image(extent, &projection, target.len()));
        provenance.push(LayerGen { source: e, k: None });
    }
    let sub = generated_subalgebra(&generator_extents, target.len(), caps)?;
    Ok(Layer {
        target,
        projection,
        sub,
        generator_extents,
        provenance,
    })
}

/// The number of universe elements extending a target point into the
/// extent: m in "1 + .. + 1 (m times)".
pub fn semiring_count(
    extent: &BitSet,
    space: &ModelSpace,
    var: usize,
    target: &ModelSpace,
    target_point: usize,
) -> Result<usize, LayerError> {
    let fiber = space.fiber(var, target, target_point)?;
    Ok(fiber.into_iter().filter(|&x| extent.contains(x)).count())
}

/// The subalgebra generated by the counting refinements: one generator per
/// element of `b` and semiring element k, holding the target points whose
/// witness count folds to k.
pub fn semiring_layer(
    b: &SubAlgebra,
    space: &ModelSpace,
    var: usize,
    s: &SemiringTable,
    caps: &Caps,
) -> Result<Layer, LayerError> {
    check_ambient(b, space);
    let (target, projection) = project_space(space, var)?;
    let gen_count = b.algebra.len().saturating_mul(s.len());
    if gen_count as u64 > caps.max_nodes {
        return Err(LayerError::CapExceeded {
            what: format!("{gen_count} layer generators"),
            cap: caps.max_nodes,
        });
    }
    let mut generator_extents = Vec::with_capacity(gen_count);
    let mut provenance = Vec::with_capacity(gen_count);
    for (e, extent) in b.extents.iter().enumerate() {
        let folds: Vec<usize> = (0..target.len())
            .map(|t| semiring_count(extent, space, var, &target, t).map(|m| s.nat(m)))
            .collect::<Result<_, _>>()?;
        for k in 0..s.len() {
            generator_extents.push(BitSet::from_indices(
                target.len(),
                (0..target.len()).filter(|&t| folds[t] == k),
            ));
            provenance.push(LayerGen {
                source: e,
                k: Some(k),
            });
        }
    }
    let sub = generated_subalgebra(&generator_extents, target.len(), caps)?;
    Ok(Layer {
        target,
        projection,
        sub,
        generator_extents,
        provenance,
    })
}

/// For each source point, the atom of `b` containing it, as an index into
/// `b.blocks` (equivalently a point of the dual space of `b`).
fn atom_of_point(b: &SubAlgebra, space_len: usize) -> Vec<usize> {
    let mut out = vec![0usize; space_len];
    for (bi, block) in b.blocks.iter().enumerate() {
        for x in block.iter() {
            out[x] = bi;
        }
    }
    out
}

pub struct ExistsMap {
    pub target: ModelSpace,
    pub projection: Vec<usize>,
    /// For each target point, the subset of dual points of `b` traced out
    /// by its fiber.
    pub values: Vec<BitSet>,
}

/// The canonical map into the hyperspace of the dual of `b`: a target
/// point goes to the image of its fiber under the dual surjection.
pub fn map_r_exists(
    b: &SubAlgebra,
    space: &ModelSpace,
    var: usize,
) -> Result<ExistsMap, LayerError> {
    check_ambient(b, space);
    let (target, projection) = project_space(space, var)?;
    let atom_of = atom_of_point(b, space.len());
    let mut values = vec![BitSet::new(b.blocks.len()); target.len()];
    for x in 0..space.len() {
        values[projection[x]].insert(atom_of[x]);
    }
    Ok(ExistsMap {
        target,
        projection,
        values,
    })
}

pub struct SemiringMap {
    pub target: ModelSpace,
    pub projection: Vec<usize>,
    /// For each target point, the pushforward to the dual of `b` of the
    /// indicator of its fiber: a semiring-valued measure on the dual.
    pub values: Vec<Measure>,
}

/// The canonical map into the measure space of the dual of `b`: indicator
/// of the fiber, integrated along the dual surjection.
pub fn map_r_semiring(
    b: &SubAlgebra,
    space: &ModelSpace,
    var: usize,
    s: &SemiringTable,
) -> Result<SemiringMap, LayerError> {
    check_ambient(b, space);
    let (target, projection) = project_space(space, var)?;
    let atom_of = atom_of_point(b, space.len());
    let values = (0..target.len())
        .map(|t| {
            let indicator: Vec<usize> = projection
                .iter()
                .map(|&pt| if pt == t { s.one() } else { s.zero() })
                .collect();
            integrate_pushforward(&indicator, &atom_of, b.blocks.len(), s)
        })
        .collect();
    Ok(SemiringMap {
        target,
        projection,
        values,
    })
}

#[derive(Clone, Debug)]
pub struct DualityReport {
    /// Preimages of subbasic sets match the layer generators, element by
    /// element.
    pub generator_identity: bool,
    /// The kernel partition of the target space under the canonical map
    /// equals the atom partition of the layered algebra.
    pub kernel_matches: bool,
    pub layer_atoms: usize,
    pub kernel_classes: usize,
}

impl DualityReport {
    pub fn ok(&self) -> bool {
        self.generator_identity && self.kernel_matches
    }
}

fn same_partition(mut a: Vec<BitSet>, mut b: Vec<BitSet>) -> bool {
    a.sort();
    b.sort();
    a == b
}

fn kernel_classes<T: std::hash::Hash + Eq>(values: &[T], len: usize) -> Vec<BitSet> {
    let mut classes: HashMap<&T, BitSet> = HashMap::new();
    for (t, v) in values.iter().enumerate() {
        classes.entry(v).or_insert_with(|| BitSet::new(len)).insert(t);
    }
    classes.into_values().collect()
}

/// Checks that the canonical hyperspace map presents the dual of the
/// existential layer: preimages of the subbasic "meets the image of e"
/// sets coincide with the direct images of e, and the kernel of the map is
/// the atom partition of the layer.
pub fn verify_exists_duality(
    b: &SubAlgebra,
    space: &ModelSpace,
    var: usize,
    caps: &Caps,
) -> Result<DualityReport, LayerError> {
    let layer = exists_layer(b, space, var, caps)?;
    let rmap = map_r_exists(b, space, var)?;
    let generator_identity = (0..b.algebra.len()).all(|e| {
        let hat = b.algebra.atoms_below(e);
        let lhs = BitSet::from_indices(
            layer.target.len(),
            (0..layer.target.len()).filter(|&t| rmap.values[t].intersects(hat)),
        );
        lhs == layer.generator_extents[e]
    });
    let classes = kernel_classes(&rmap.values, layer.target.len());
    Ok(DualityReport {
        generator_identity,
        kernel_matches: same_partition(classes.clone(), layer.sub.blocks.clone()),
        layer_atoms: layer.sub.blocks.len(),
        kernel_classes: classes.len(),
    })
}

/// Checks that the canonical measure-space map presents the dual of the
/// counting layer: preimages of the subbasic "measures e as k" sets
/// coincide with the counting generators, and the kernel of the map is the
/// atom partition of the layer.
pub fn verify_semiring_duality(
    b: &SubAlgebra,
    space: &ModelSpace,
    var: usize,
    s: &SemiringTable,
    caps: &Caps,
) -> Result<DualityReport, LayerError> {
    let layer = semiring_layer(b, space, var, s, caps)?;
    let rmap = map_r_semiring(b, space, var, s)?;
    let generator_identity = (0..b.algebra.len()).all(|e| {
        let hat = b.algebra.atoms_below(e);
        (0..s.len()).all(|k| {
            let lhs = BitSet::from_indices(
                layer.target.len(),
                (0..layer.target.len()).filter(|&t| rmap.values[t].value(hat, s) == k),
            );
            lhs == layer.generator_extents[e * s.len() + k]
        })
    });
    let classes = kernel_classes(&rmap.values, layer.target.len());
    Ok(DualityReport {
        generator_identity,
        kernel_matches: same_partition(classes.clone(), layer.sub.blocks.clone()),
        layer_atoms: layer.sub.blocks.len(),
        kernel_classes: classes.len(),
    })
}

/// The subalgebra of the source space generated by `b` together with the
/// pullback of its existential layer.
pub fn combined_layer(
    b: &SubAlgebra,
    space: &ModelSpace,
    var: usize,
    caps: &Caps,
) -> Result<SubAlgebra, LayerError> {
    let layer = exists_layer(b, space, var, caps)?;
    let mut generators = b.extents.clone();
    generators.extend(
        layer
            .sub
            .extents
            .iter()
            .map(|e| preimage(e, &layer.projection)),
    );
    Ok(generated_subalgebra(&generators, space.len(), caps)?)
}

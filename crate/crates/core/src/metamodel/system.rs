use std::sync::Arc;

use super::{EntityTuple, MilieuMatrix, Neighbor, UpdateFunction};
use crate::{Error, Result};

/// Structure paired with operation, before any concrete values exist.
pub struct System<F> {
    entity_count: usize,
    milieu: MilieuMatrix,
    operation: Arc<F>,
}

impl<F> Clone for System<F> {
    fn clone(&self) -> Self {
        Self {
            entity_count: self.entity_count,
            milieu: self.milieu.clone(),
            operation: Arc::clone(&self.operation),
        }
    }
}

impl<F> std::fmt::Debug for System<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("System")
            .field("entity_count", &self.entity_count)
            .field("edges", &self.milieu.edge_count())
            .finish_non_exhaustive()
    }
}

/// Pairs a structure (`entity_count` entities connected by `milieu`) with an
/// operation.
///
/// Fails with [`Error::NonSquareMilieu`] if the milieu does not span exactly
/// `entity_count` entities, and with [`Error::ArityMismatch`] on the first
/// row whose degree the operation does not admit.
pub fn compose_system<F: UpdateFunction>(
    entity_count: usize,
    milieu: MilieuMatrix,
    operation: F,
) -> Result<System<F>> {
    if milieu.dim() != entity_count {
        return Err(Error::NonSquareMilieu {
            rows: entity_count,
            row: 0,
            cols: milieu.dim(),
        });
    }
    for entity in 0..entity_count {
        let degree = milieu.degree(entity);
        if !operation.admits_degree(degree) {
            return Err(Error::ArityMismatch {
                entity,
                degree,
                arity: operation.arity(),
            });
        }
    }
    Ok(System {
        entity_count,
        milieu,
        operation: Arc::new(operation),
    })
}

impl<F: UpdateFunction> System<F> {
    pub fn entity_count(&self) -> usize {
        self.entity_count
    }

    pub fn arity(&self) -> usize {
        self.operation.arity()
    }

    pub fn milieu(&self) -> &MilieuMatrix {
        &self.milieu
    }

    pub fn operation(&self) -> &F {
        &self.operation
    }

    /// Feeds the system initial states and actual parameters, yielding a
    /// metastable system at time 0.
    pub fn parameterize(
        &self,
        initial: EntityTuple<F::State>,
        params: F::Params,
    ) -> Result<MetastableSystem<F>> {
        if initial.len() != self.entity_count {
            return Err(Error::LengthMismatch {
                expected: self.entity_count,
                actual: initial.len(),
            });
        }
        let mut milieu = self.milieu.clone();
        self.operation.actualize(&params, &mut milieu)?;
        Ok(MetastableSystem {
            system: self.clone(),
            milieu,
            params,
            scratch: initial.clone(),
            entities: initial,
            time: 0,
        })
    }
}

/// A system with concrete states and parameters, ready to compute.
pub struct MetastableSystem<F: UpdateFunction> {
    system: System<F>,
    milieu: MilieuMatrix,
    params: F::Params,
    entities: EntityTuple<F::State>,
    scratch: EntityTuple<F::State>,
    time: u64,
}

impl<F: UpdateFunction> Clone for MetastableSystem<F> {
    fn clone(&self) -> Self {
        Self {
            system: self.system.clone(),
            milieu: self.milieu.clone(),
            params: self.params.clone(),
            entities: self.entities.clone(),
            scratch: self.scratch.clone(),
            time: self.time,
        }
    }
}

impl<F: UpdateFunction> std::fmt::Debug for MetastableSystem<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("MetastableSystem")
            .field("system", &self.system)
            .field("time", &self.time)
            .field("entities", &self.entities)
            .finish_non_exhaustive()
    }
}

impl<F: UpdateFunction> MetastableSystem<F> {
    pub fn system(&self) -> &System<F> {
        &self.system
    }

    pub fn entity_count(&self) -> usize {
        self.entities.len()
    }

    pub fn time(&self) -> u64 {
        self.time
    }

    pub fn entities(&self) -> &EntityTuple<F::State> {
        &self.entities
    }

    /// Overwrites current states in place. The entity count is fixed, so
    /// only a mutable slice is handed out.
    pub fn states_mut(&mut self) -> &mut [F::State] {
        self.entities.as_mut_slice()
    }

    pub fn params(&self) -> &F::Params {
        &self.params
    }

    /// The actualized milieu, including current connection weights.
    pub fn milieu(&self) -> &MilieuMatrix {
        &self.milieu
    }

    /// Weight access for learning rules. Connections cannot be added or
    /// removed through this handle.
    pub fn milieu_mut(&mut self) -> &mut MilieuMatrix {
        &mut self.milieu
    }

    /// Milieu of entity `i` with current states, in row order.
    pub fn milieu_of(&self, i: usize) -> Result<Vec<Neighbor<F::State>>> {
        if i >= self.entity_count() {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: self.entity_count(),
            });
        }
        Ok(self
            .milieu
            .row(i)
            .map(|(index, weight)| Neighbor {
                index,
                weight,
                state: self.entities[index],
            })
            .collect())
    }

    /// One synchronous update: every entity reads the time-`t` snapshot.
    pub fn step(&mut self) {
        self.step_entities(0..self.entity_count());
    }

    /// Synchronous update evaluating entities in the given order. `order`
    /// must visit every entity exactly once; the result does not depend on
    /// the order.
    pub fn step_in_order(&mut self, order: &[usize]) {
        debug_assert_eq!(order.len(), self.entity_count());
        self.step_entities(order.iter().copied());
    }

    fn step_entities(&mut self, order: impl Iterator<Item = usize>) {
        let op = &*self.system.operation;
        let current = self.entities.as_slice();
        let next = self.scratch.as_mut_slice();
        let mut view: Vec<Neighbor<F::State>> = Vec::with_capacity(op.arity());
        for i in order {
            view.clear();
            view.extend(self.milieu.row(i).map(|(index, weight)| Neighbor {
                index,
                weight,
                state: current[index],
            }));
            next[i] = op.apply(&self.params, current[i], &view);
        }
        std::mem::swap(&mut self.entities, &mut self.scratch);
        self.time += 1;
    }

    /// Advances `steps` times without recording intermediate snapshots.
    pub fn advance(&mut self, steps: usize) {
        for _ in 0..steps {
            self.step();
        }
    }

    /// Advances `steps` times, recording the current snapshot followed by
    /// one snapshot per step.
    pub fn run(&mut self, steps: usize) -> Trace<F::State> {
        let mut snapshots = Vec::with_capacity(steps + 1);
        snapshots.push(self.entities.clone());
        for _ in 0..steps {
            self.step();
            snapshots.push(self.entities.clone());
        }
        Trace { snapshots }
    }
}

/// Snapshots indexed by time, starting with the state a run began from.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Trace<S> {
    snapshots: Vec<EntityTuple<S>>,
}

impl<S: super::State> Trace<S> {
    pub fn from_snapshots(snapshots: Vec<EntityTuple<S>>) -> Self {
        Self { snapshots }
    }

    /// Number of snapshots, `T + 1` for a `T`-step run.
    pub fn len(&self) -> usize {
        self.snapshots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.snapshots.is_empty()
    }

    pub fn snapshots(&self) -> &[EntityTuple<S>] {
        &self.snapshots
    }

    pub fn initial(&self) -> &EntityTuple<S> {
        &self.snapshots[0]
    }

    pub fn last(&self) -> &EntityTuple<S> {
        self.snapshots.last().expect("trace always holds the initial snapshot")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metamodel::{from_fn, Bit, MilieuBuilder};

    fn xor_ring(width: usize) -> System<impl UpdateFunction<State = Bit, Params = ()>> {
        let mut b = MilieuBuilder::new(width);
        for i in 0..width {
            b.connect(i, (i + width - 1) % width, 1.0).unwrap();
            b.connect(i, (i + 1) % width, 1.0).unwrap();
        }
        compose_system(
            width,
            b.build(),
            from_fn(2, |_own: Bit, m: &[Neighbor<Bit>]| {
                Bit::from_bool(m[0].state != m[1].state)
            }),
        )
        .unwrap()
    }

    #[test]
    fn arity_zero_keeps_own_state() {
        let sys = compose_system(4, MilieuMatrix::empty(4), from_fn(0, |own: Bit, _| own)).unwrap();
        assert_eq!(sys.arity(), 0);
        let init = EntityTuple::from_bits(&[1, 0, 1, 1]).unwrap();
        let mut ms = sys.parameterize(init.clone(), ()).unwrap();
        let trace = ms.run(5);
        assert!(trace.snapshots().iter().all(|s| *s == init));
    }

    #[test]
    fn arity_mismatch_detected() {
        let mut b = MilieuBuilder::new(3);
        b.connect(0, 1, 1.0).unwrap();
        let err = compose_system(3, b.build(), from_fn(1, |own: Bit, _| own)).unwrap_err();
        assert_eq!(
            err,
            Error::ArityMismatch {
                entity: 1,
                degree: 0,
                arity: 1
            }
        );
    }

    #[test]
    fn milieu_dimension_must_match_entities() {
        let err = compose_system(3, MilieuMatrix::empty(4), from_fn(0, |own: Bit, _| own)).unwrap_err();
        assert!(matches!(err, Error::NonSquareMilieu { .. }));
    }

    #[test]
    fn parameterize_checks_length() {
        let sys = xor_ring(5);
        let err = sys
            .parameterize(EntityTuple::filled(4, Bit::Zero), ())
            .unwrap_err();
        assert_eq!(
            err,
            Error::LengthMismatch {
                expected: 5,
                actual: 4
            }
        );
    }

    #[test]
    fn run_zero_steps_is_identity() {
        let init = EntityTuple::from_bits(&[0, 1, 0, 0, 1]).unwrap();
        let mut ms = xor_ring(5).parameterize(init.clone(), ()).unwrap();
        let trace = ms.run(0);
        assert_eq!(trace.len(), 1);
        assert_eq!(trace.initial(), &init);
        assert_eq!(ms.time(), 0);
    }

    #[test]
    fn time_and_shape_preserved() {
        let init = EntityTuple::from_bits(&[0, 1, 0, 0, 1]).unwrap();
        let mut ms = xor_ring(5).parameterize(init, ()).unwrap();
        let milieu = ms.milieu().clone();
        let trace = ms.run(7);
        assert_eq!(trace.len(), 8);
        assert_eq!(ms.time(), 7);
        assert_eq!(ms.entity_count(), 5);
        assert_eq!(ms.milieu(), &milieu);
    }

    #[test]
    fn milieu_of_out_of_range() {
        let ms = xor_ring(5)
            .parameterize(EntityTuple::filled(5, Bit::Zero), ())
            .unwrap();
        assert_eq!(
            ms.milieu_of(5).unwrap_err(),
            Error::IndexOutOfRange { index: 5, len: 5 }
        );
        let view = ms.milieu_of(0).unwrap();
        assert_eq!(view.iter().map(|n| n.index).collect::<Vec<_>>(), vec![4, 1]);
    }

    #[test]
    fn reverse_order_matches_forward() {
        let init = EntityTuple::from_bits(&[0, 1, 1, 0, 1, 0, 0]).unwrap();
        let sys = xor_ring(7);
        let mut a = sys.parameterize(init.clone(), ()).unwrap();
        let mut b = sys.parameterize(init, ()).unwrap();
        let reverse: Vec<usize> = (0..7).rev().collect();
        for _ in 0..10 {
            a.step();
            b.step_in_order(&reverse);
            assert_eq!(a.entities(), b.entities());
        }
    }
}

use super::{MilieuMatrix, Neighbor, State};
use crate::Result;

/// The operation of a system: computes an entity's next state from its own
/// state and the states of its milieu, all taken from the same time step.
///
/// Implementations must be pure. Concrete values that parameterize the
/// operation (a rule table, a weight assignment) arrive as `Params` when a
/// system is made metastable; the update function itself stays abstract.
pub trait UpdateFunction: Send + Sync {
    type State: State;
    type Params: Clone + Send + Sync;

    /// Number of milieu members each entity is expected to have.
    fn arity(&self) -> usize;

    /// Whether a milieu row with `degree` members can be paired with this
    /// operation. Defaults to exact arity.
    fn admits_degree(&self, degree: usize) -> bool {
        degree == self.arity()
    }

    /// Validates `params` and writes whatever part of them lives in the
    /// milieu (connection weights) into `milieu`.
    fn actualize(&self, _params: &Self::Params, _milieu: &mut MilieuMatrix) -> Result<()> {
        Ok(())
    }

    fn apply(
        &self,
        params: &Self::Params,
        own: Self::State,
        milieu: &[Neighbor<Self::State>],
    ) -> Self::State;
}

/// Adapter turning a plain function into a parameterless [`UpdateFunction`].
pub struct FnUpdate<S, F> {
    arity: usize,
    f: F,
    _state: std::marker::PhantomData<fn() -> S>,
}

pub fn from_fn<S, F>(arity: usize, f: F) -> FnUpdate<S, F>
where
    S: State,
    F: Fn(S, &[Neighbor<S>]) -> S + Send + Sync,
{
    FnUpdate {
        arity,
        f,
        _state: std::marker::PhantomData,
    }
}

impl<S, F> UpdateFunction for FnUpdate<S, F>
where
    S: State,
    F: Fn(S, &[Neighbor<S>]) -> S + Send + Sync,
{
    type State = S;
    type Params = ();

    fn arity(&self) -> usize {
        self.arity
    }

    fn apply(&self, _params: &(), own: S, milieu: &[Neighbor<S>]) -> S {
        (self.f)(own, milieu)
    }
}

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::frontend;
use crate::weyl::{WeylContext, WeylElement};

/// A left ideal `<P_1, ..., P_k>` of the Weyl algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylIdeal {
    ctx: Arc<WeylContext>,
    generators: Vec<WeylElement>,
}

impl WeylIdeal {
    pub fn new(ctx: &Arc<WeylContext>, generators: Vec<WeylElement>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::Input("an ideal needs at least one generator".into()));
        }
        for g in &generators {
            if g.is_zero() {
                return Err(Error::Input("generators must be nonzero".into()));
            }
            if !WeylContext::same(ctx, g.ctx()) {
                return Err(Error::ContextMismatch);
            }
        }
        Ok(WeylIdeal { ctx: ctx.clone(), generators })
    }

    /// Parses each generator with [`frontend::parse_weyl`].
    pub fn parse<S: AsRef<str>>(ctx: &Arc<WeylContext>, generators: &[S]) -> Result<Self> {
        let gens = generators.iter().map(|s| frontend::parse_weyl(ctx, s.as_ref())).collect::<Result<Vec<_>>>()?;
        Self::new(ctx, gens)
    }

    pub fn ctx(&self) -> &Arc<WeylContext> {
        &self.ctx
    }

    pub fn generators(&self) -> &[WeylElement] {
        &self.generators
    }

    /// The same generators under another weight vector.
    pub fn rebase(&self, ctx: &Arc<WeylContext>) -> Result<Self> {
        let gens = self.generators.iter().map(|g| g.rebase(ctx)).collect::<Result<Vec<_>>>()?;
        Self::new(ctx, gens)
    }
}

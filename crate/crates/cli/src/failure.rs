//! Errors carrying the process exit code.

use std::fmt::Display;

pub const CONFIG: u8 = 2;
pub const RUNTIME: u8 = 3;
pub const ANALYSIS: u8 = 4;

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub error: anyhow::Error,
}

impl Failure {
    pub fn config(error: anyhow::Error) -> Self {
        Self {
            code: CONFIG,
            error,
        }
    }

    pub fn runtime(error: anyhow::Error) -> Self {
        Self {
            code: RUNTIME,
            error,
        }
    }

    pub fn analysis(error: anyhow::Error) -> Self {
        Self {
            code: ANALYSIS,
            error,
        }
    }
}

pub trait ResultExt<T> {
    fn config(self) -> Result<T, Failure>;
    fn runtime(self) -> Result<T, Failure>;
    fn analysis(self) -> Result<T, Failure>;
    fn runtime_ctx<C: Display + Send + Sync + 'static>(self, ctx: C) -> Result<T, Failure>;
}

impl<T, E: Into<anyhow::Error>> ResultExt<T> for Result<T, E> {
    fn config(self) -> Result<T, Failure> {
        self.map_err(|e| Failure::config(e.into()))
    }

    fn runtime(self) -> Result<T, Failure> {
        self.map_err(|e| Failure::runtime(e.into()))
    }

    fn analysis(self) -> Result<T, Failure> {
        self.map_err(|e| Failure::analysis(e.into()))
    }

    fn runtime_ctx<C: Display + Send + Sync + 'static>(self, ctx: C) -> Result<T, Failure> {
        self.map_err(|e| Failure::runtime(e.into().context(ctx)))
    }
}

//! Tensor file format.
//!
//! A tensor is stored as one JSON document
//!
//! ```text
//! {"dims":[m,n,p],"data":[...]}
//! ```
//!
//! with `data[(k−1)·m·n + (i−1)·n + (j−1)] = a_ijk` (1-based indices).
//! Numbers are written in shortest round-trip form, so reading a written
//! file reproduces the tensor bit for bit.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tensor::Tensor3;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TensorFile {
    dims: [usize; 3],
    data: Vec<f64>,
}

pub fn to_string(t: &Tensor3) -> String {
    let (m, n, p) = t.dims();
    let file = TensorFile {
        dims: [m, n, p],
        data: t.as_slice().to_vec(),
    };
    let mut out = serde_json::to_string(&file).expect("finite floats always serialize");
    out.push('\n');
    out
}

pub fn from_str(text: &str) -> Result<Tensor3> {
    let file: TensorFile = serde_json::from_str(text)
        .map_err(|e| Error::Format(format!("line {} column {}: {}", e.line(), e.column(), e)))?;
    let [m, n, p] = file.dims;
    Tensor3::new(m, n, p, file.data)
}

pub fn read(path: impl AsRef<Path>) -> Result<Tensor3> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    from_str(&text).map_err(|e| match e {
        Error::Format(msg) => Error::Format(format!("{}: {msg}", path.display())),
        other => other,
    })
}

pub fn write(path: impl AsRef<Path>, t: &Tensor3) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, to_string(t)).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

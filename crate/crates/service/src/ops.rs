use serde::Deserialize;

/// A selection op as sent by clients. Vertices are original labels.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case", deny_unknown_fields)]
pub enum WireOp {
    AddVertex { vertex: u64 },
    RemoveVertex { vertex: u64 },
    AddEdge { src: u64, dst: u64 },
    RemoveEdge { src: u64, dst: u64 },
    /// Replaces the selection with exactly these vertices.
    SetVertices { vertices: Vec<u64> },
    Clear,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OpsRequest {
    pub ops: Vec<WireOp>,
    /// Client sequence number, echoed in the response.
    #[serde(default)]
    pub seq: Option<u64>,
}

use serde::Serialize;

use crate::error::Result;
use crate::graph::{clustering_coefficient, cp_coefficient, Eccentricities, Graph};

/// Summary statistics of one network snapshot.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DatasetStats {
    pub vertices: usize,
    pub edges: usize,
    pub clust_coef: f64,
    pub max_degree: usize,
    pub diameter: u32,
    pub radius: u32,
    pub center_size: usize,
    pub timestamps: usize,
    /// `None` when no null samples were requested or the null model failed.
    pub cp_coef: Option<f64>,
    /// Set when the input was disconnected and its largest component was
    /// measured instead.
    pub largest_component_used: bool,
}

impl DatasetStats {
    pub const CSV_HEADER: &'static str =
        "vertices,edges,clust_coef,max_degree,diameter,radius,center_size,timestamps,cp_coef,largest_component_used";

    pub fn csv_row(&self) -> String {
        let cp = self.cp_coef.map(|c| format!("{c:.6}")).unwrap_or_default();
        format!(
            "{},{},{:.6},{},{},{},{},{},{},{}",
            self.vertices,
            self.edges,
            self.clust_coef,
            self.max_degree,
            self.diameter,
            self.radius,
            self.center_size,
            self.timestamps,
            cp,
            self.largest_component_used
        )
    }
}

/// Statistics of `g`, or of its largest component when `g` is disconnected.
/// The cp-coefficient is skipped when `cp_null_samples` is 0.
pub fn dataset_stats(g: &Graph, n_timestamps: usize, cp_null_samples: usize, seed: u64) -> Result<DatasetStats> {
    let connected = g.is_connected();
    let owned;
    let h = if connected {
        g
    } else {
        log::warn!("snapshot is disconnected, measuring its largest component");
        owned = g.largest_component();
        &owned
    };
    let ecc = Eccentricities::compute(h);
    let cp_coef = if cp_null_samples == 0 || h.vertex_count() < 2 {
        None
    } else {
        match cp_coefficient(h, cp_null_samples, seed) {
            Ok(cp) => Some(cp.value),
            Err(e) => {
                log::warn!("cp coefficient unavailable: {e}");
                None
            }
        }
    };
    Ok(DatasetStats {
        vertices: h.vertex_count(),
        edges: h.edge_count(),
        clust_coef: clustering_coefficient(h),
        max_degree: h.max_degree(),
        diameter: ecc.diameter().finite().unwrap_or(0),
        radius: ecc.radius().finite().unwrap_or(0),
        center_size: ecc.center().len(),
        timestamps: n_timestamps,
        cp_coef,
        largest_component_used: !connected,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ten_cycle() {
        let s = dataset_stats(&Graph::cycle(10), 10, 0, 0).unwrap();
        assert_eq!((s.vertices, s.edges, s.diameter, s.center_size), (10, 10, 5, 10));
        assert_eq!(s.clust_coef, 0.0);
        assert_eq!(s.cp_coef, None);
        assert!(!s.largest_component_used);
    }

    #[test]
    fn disconnected_uses_largest_component() {
        let g = Graph::from_edges([(1u32, 2u32), (2, 3), (3, 1), (7, 8)]).unwrap();
        let s = dataset_stats(&g, 1, 0, 0).unwrap();
        assert!(s.largest_component_used);
        assert_eq!((s.vertices, s.edges, s.center_size), (3, 3, 3));
        assert_eq!(s.clust_coef, 1.0);
        assert_eq!(s.csv_row(), "3,3,1.000000,2,1,1,3,1,,true");
    }

    #[test]
    fn cp_on_request() {
        let s = dataset_stats(&Graph::cycle(12), 1, 5, 3).unwrap();
        assert!(s.cp_coef.unwrap().abs() < 0.05);
    }
}

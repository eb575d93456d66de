use crate::dynamics::{temporal_profile, Expansion, ProfileRow};
use crate::error::{Error, Result};
use crate::generators::{Generator, ModelParams};
use crate::graph::{Eccentricities, Graph, VertexId};
use crate::ingest::{snapshots, EdgeEvent, SnapshotPolicy};

/// Smallest-id center vertex of `g`.
pub fn default_reference(g: &Graph) -> Result<VertexId> {
    let ecc = Eccentricities::compute(g);
    ecc.center()
        .iter()
        .map(|&i| g.id_at(i as usize))
        .min()
        .ok_or(Error::EmptyGraph)
}

/// Profile of a scripted evolution: the initial network and one row after
/// each expansion.
pub fn profile_scripted(initial: &Graph, trace: &[Expansion], reference: Option<VertexId>) -> Result<Vec<ProfileRow>> {
    let reference = match reference {
        Some(r) => r,
        None => default_reference(initial)?,
    };
    let mut g = initial.clone();
    let mut snaps = vec![g.clone()];
    for f in trace {
        f.validate(&g, VertexId(u32::MAX))?;
        f.apply(&mut g);
        snaps.push(g.clone());
    }
    Ok(temporal_profile(&snaps, reference))
}

/// Profile of a model: its initial network followed by `steps` growth
/// timestamps.
pub fn profile_model(params: &ModelParams, steps: usize, reference: Option<VertexId>) -> Result<Vec<ProfileRow>> {
    let mut gen = Generator::new(*params)?;
    let mut g = gen.build_initial()?;
    let reference = match reference {
        Some(r) => r,
        None => default_reference(&g)?,
    };
    let mut snaps = vec![g.clone()];
    for _ in 0..steps {
        let f = gen.step(&g, None, params.growth)?;
        f.apply(&mut g);
        snaps.push(g.clone());
    }
    Ok(temporal_profile(&snaps, reference))
}

/// Profile of a dataset, measured on the largest component of every
/// snapshot. The default reference is a center vertex of the last one.
pub fn profile_events(events: &[EdgeEvent], policy: SnapshotPolicy, reference: Option<VertexId>) -> Result<Vec<ProfileRow>> {
    let snaps: Vec<Graph> = snapshots(events, policy)?
        .iter()
        .map(Graph::largest_component)
        .collect();
    let reference = match (reference, snaps.last()) {
        (Some(r), _) => r,
        (None, Some(g)) => default_reference(g)?,
        (None, None) => return Ok(Vec::new()),
    };
    Ok(temporal_profile(&snaps, reference))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::Model;
    use crate::graph::Distance;
    use crate::worked_example;

    #[test]
    fn reference_scenario() {
        let rows = profile_scripted(&worked_example::initial_graph(), &worked_example::trace(), None).unwrap();
        let gdiam: Vec<Distance> = rows.iter().map(|r| r.graph_diameter).collect();
        assert_eq!(gdiam, [5, 6, 6, 6].map(Distance::Finite));
    }

    #[test]
    fn ba_on_a_cycle() {
        let p = ModelParams::new(Model::Ba, 2).size(10).seed(4);
        let rows = profile_model(&p, 5, None).unwrap();
        let sizes: Vec<usize> = rows.iter().map(|r| r.size).collect();
        assert_eq!(sizes, (10..=15).collect::<Vec<_>>());
    }

    #[test]
    fn events() {
        let ev = crate::ingest::parse_str("1 2 0\n2 3 1\n5 6 2\n3 4 3").unwrap();
        let rows = profile_events(&ev, SnapshotPolicy::PerEvent, None).unwrap();
        assert_eq!(rows.len(), 4);
        assert_eq!(rows[3].size, 4);
        assert_eq!(rows[2].size, 3);
    }
}

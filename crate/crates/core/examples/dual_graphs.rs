//! Weighted dual graphs: blow-ups, contraction, the Ramanujam test and
//! continued-fraction resolution chains.

use exotic::dualgraph::{
    ramanujam_boundary_graph, ramanujam_verdict, resolution_chain, xt_certificate, xt_matrix,
    BlowUpSite, WeightedGraph,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = WeightedGraph::chain(&[-2, 0]);
    let (h, e) = g.blow_up(&BlowUpSite::Edge("v1".into(), "v2".into()))?;
    println!(
        "blow-up of [-2]--[0]: {}",
        serde_json::to_string(&h.to_json())?
    );
    println!(
        "contracting {e} again gives back the chain: {}",
        h.contract(&e)? == g
    );
    println!("verdict on [-2]--[0]: {:?}", ramanujam_verdict(&g));

    let r = ramanujam_boundary_graph();
    println!(
        "verdict on the Ramanujam boundary: {:?}",
        ramanujam_verdict(&r)
    );
    println!("det = {}", r.intersection_matrix().determinant());

    let chain = resolution_chain(5, 3)?;
    let weights: Vec<i64> = chain.graph.vertices().iter().map(|(_, w)| *w).collect();
    println!(
        "resolving x^5 / y^3: weights {weights:?}, trace {:?}",
        chain.trace
    );

    let t = xt_matrix(2, 1, 1, 1, 1, 1, 1, 2);
    println!("X_T certificate: {:?}", xt_certificate(&t)?);
    print!("{}", chain.graph.to_dot());
    Ok(())
}

"""One-round orientation on small graphs: vector relaxation vs random vs optimum."""
import networkx as nx
import numpy as np

from rendezvous import oneround as orr

cases = {
    "triangle": nx.cycle_graph(3),
    "K4": nx.complete_graph(4),
    "Petersen": nx.petersen_graph(),
    "wheel-7": nx.wheel_graph(7),
    "grid 3x3": nx.convert_node_labels_to_integers(nx.grid_2d_graph(3, 3)),
}
for name, g in cases.items():
    og = orr.make_graph(g.edges())
    opt, _ = orr.brute_force_optimal_orientation(og)
    got = orr.count_in_pairs(orr.orient_one_round(og, seed=1))
    rand = np.mean([orr.count_in_pairs(orr.random_orient(og, s)) for s in range(500)])
    print(f"{name:<9} edges={len(og.edges):>2} incident={orr.count_incident_pairs(og):>3} "
          f"optimum={opt:>3} rounded={got:>3} random mean={rand:6.2f}")

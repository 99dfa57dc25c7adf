"""Loading networks and computing structural feature profiles.

Every graph is a simple undirected network with dense integer ids; original
node labels survive loading so results can be reported in the input's terms.
"""

from fairseed import compute_features, load_edge_list, load_manifest
from fairseed.data import fixture_manifest_path

manifest = load_manifest(fixture_manifest_path())
print(f"bundled corpus: {len(manifest)} networks\n")

for entry in manifest:
    g = load_edge_list(entry.path, name=entry.name, domain=entry.domain)
    f = compute_features(g)
    print(
        f"{g.name:16s} {entry.domain:14s} n={f.n:2d} m={g.m:2d} "
        f"<k>={f.mean_degree:.2f} kmax={f.max_degree} C={f.clustering:.2f} "
        f"<l>={f.mean_path_length:.2f} lmax={f.diameter} r={f.assortativity:+.2f}"
    )

# labels from an edge list with arbitrary tokens map to dense ids by first
# appearance and back again on output
g = load_edge_list(fixture_manifest_path().parent / "p5.edges")
print(f"\np5 node labels: {g.labels}")
print(f"neighbors of node 2: {g.neighbors(2).tolist()} (degree {g.degree(2)})")

import copy

from localep.generators import complete, cycle, disjoint_copies, path
from localep.localize import localize
from localep.verify import verify_certificate

C3 = cycle(3)


def cert_for(G, H):
    return localize(G, H).to_dict()


def test_valid_certificate_passes_all_checks():
    report = verify_certificate(complete(4), C3, cert_for(complete(4), C3))
    assert report.ok
    assert [line.split()[0] for line in report.lines()] == ["PASS"] * 5


def test_removing_an_x_vertex_fails_hitting_check():
    G = complete(5)
    cert = cert_for(G, C3)
    for v in cert["X"]:
        bad = copy.deepcopy(cert)
        bad["X"].remove(v)
        assert verify_certificate(G, C3, bad).failed() == ["d"]


def test_off_packing_vertex_fails_containment():
    G = complete(5)
    cert = cert_for(G, C3)
    inside = set(cert["embeddings"][0]["branch"].values())
    for p in cert["embeddings"][0]["paths"].values():
        inside |= set(p)
    outside = next(v for v in G.vertices if v not in inside)
    cert["X"].append(outside)
    assert "c" in verify_certificate(G, C3, cert).failed()


def test_broken_embedding_fails_validity():
    G = disjoint_copies(C3, 2)
    cert = cert_for(G, C3)
    cert["embeddings"][0]["paths"]["0-1"] = [0, 4]
    assert verify_certificate(G, C3, cert).failed()[0] == "a"


def test_overlapping_embeddings_fail_disjointness():
    G = disjoint_copies(C3, 2)
    cert = cert_for(G, C3)
    cert["embeddings"][1] = copy.deepcopy(cert["embeddings"][0])
    assert "b" in verify_certificate(G, C3, cert).failed()


def test_tampered_bound_fails():
    G = complete(4)
    cert = cert_for(G, C3)
    cert["bound_derived"] = "2"
    assert verify_certificate(G, C3, cert).failed() == ["e"]
    cert = cert_for(G, C3)
    cert["Z"] = cert["Z"][:1]
    cert["z"] = 1
    assert verify_certificate(G, C3, cert).failed() == ["e"]


def test_empty_certificate_for_free_graph():
    assert verify_certificate(path(5), C3, cert_for(path(5), C3)).ok

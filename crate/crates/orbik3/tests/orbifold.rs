use num_traits::{One, Zero};
use orbik3::lattice::{add, qmatrix, scale, sub, Lattice, SublatticeHandle};
use orbik3::orbifold::*;
use orbik3::scalar::{mod_rational, rat, rint};
use orbik3::{BigInt, Rat};

#[test]
fn torus_image_lattice() {
    let t = torus_invariant_lattice();
    assert_eq!(t.gram(), &qmatrix(&[&[6, 3, 0, 0], &[3, 6, 0, 0], &[0, 0, 0, 3], &[0, 0, 3, 0]]));
    assert_eq!(t.discriminant(), rint(-243));
    assert!(t.is_even());
    let k = build_k();
    let gens: Vec<_> = torus_images().into_iter().map(|v| v.coords).collect();
    let s = SublatticeHandle::from_ambient(&k, &gens).unwrap().unwrap();
    assert_eq!(s.index().unwrap(), BigInt::from(3));
}

#[test]
fn root_lattice_r() {
    let r = build_r();
    assert_eq!(r.discriminant(), rint(19683));
    assert_eq!(r.signature().unwrap(), (0, 18));
}

#[test]
fn p_and_its_dual() {
    let p = build_p();
    let pd = build_p_dual();
    assert_eq!(p.discriminant(), rint(27));
    assert!(p.is_even());
    assert!(pd.same_as(&p.dual().unwrap()).unwrap());

    let r = build_r();
    let rows: Vec<_> = root_generators()
        .iter()
        .map(|v| p.int_coords(v).unwrap().unwrap())
        .collect();
    let s = SublatticeHandle::new(&p, rows).unwrap();
    assert_eq!(s.index().unwrap(), BigInt::from(27));
    assert!(!s.is_primitive());
    assert!(r.contains(&root_generators()[0]).unwrap());

    let d = p_discriminant(&p);
    assert_eq!(d.elementary_divisors, vec![BigInt::from(3); 3]);
    for i in 0..3 {
        assert_eq!(mod_rational(&d.q_values[i], 2), rat(2, 3));
        for j in 0..3 {
            if i != j {
                assert!(d.b_matrix[(i, j)].is_zero());
            }
        }
    }

    let v3 = &v_generators()[2];
    assert!(p.contains(v3).unwrap());
}

#[test]
fn line_vectors() {
    let p = build_p();
    let pd = build_p_dual();
    for l in all_lines() {
        let v = third_line(&l);
        assert!(pd.contains(&v).unwrap());
        assert!(!p.contains(&v).unwrap());
        for m in l.parallels() {
            assert!(p.contains(&sub(&v, &third_line(&m))).unwrap());
        }
    }
    // p1 − p2 − p3 ≡ (1/3)Σ_{L12} E
    let pg = p_generators();
    let c = sub(&sub(&pg[0], &pg[1]), &pg[2]);
    assert!(p.contains(&sub(&c, &third_line(&l12()))).unwrap());
}

#[test]
fn k_lattice() {
    let k = build_k();
    assert_eq!(k.gram(), &k_gram());
    assert_eq!(k.discriminant(), rint(-27));
    let d = k_discriminant(&k);
    assert_eq!(d.order(), BigInt::from(27));
    for i in 0..3 {
        assert_eq!(mod_rational(&d.q_values[i], 2), rat(4, 3));
        for j in 0..3 {
            if i != j {
                assert!(d.b_matrix[(i, j)].is_zero());
            }
        }
    }
}

#[test]
fn glued_k3_lattice() {
    let o = orbifold();
    let c = o.h2x.classify().unwrap();
    assert!(c.even && c.unimodular);
    assert_eq!(c.signature, (3, 19));
    assert_eq!(o.h2x.rank(), 22);
    let (kg, pg) = (k_generators(), p_generators());
    for j in 0..3 {
        assert!(o.h2x.contains(&h2_vec(&kg[j], &pg[j])).unwrap());
    }
    let g = g_vectors();
    let combo = add(&add(&sub(&sub(&g[1], &g[0]), &g[2]), &g[3]), &g[4]);
    let expect = h2_vec(&kappa(1), &scale(&-Rat::one(), &e_comp(Label::new(0, 1))));
    assert_eq!(combo, expect);
    assert!(o.h2x.contains(&expect).unwrap());
}

#[test]
fn gluelist_members() {
    let o = orbifold();
    let rep = verify_gluelist(o);
    assert_eq!(rep.total, 12);
    assert!(rep.passed(), "{rep:?}");
    for g in g_vectors() {
        assert!(o.h2x.contains(&g).unwrap());
    }
}

#[test]
fn complement_of_k_is_p() {
    let o = orbifold();
    let comp = k_in_h2x(o).orthogonal_complement().unwrap().lattice().unwrap();
    assert!(comp.same_as(&p_in_h2(o)).unwrap());
}

#[test]
fn min_norm_census() {
    let o = orbifold();
    let rep = verify_min_norm_in_p_dual(o);
    assert_eq!(rep.below_two, 0);
    assert_eq!(rep.norm_two_in_r, 54);
    assert_eq!(rep.norm_two_outside_p, 648);
    assert_eq!(rep.norm_two, 702);
    assert!(rep.passed());
}

#[test]
fn transcendental_lattice() {
    let (tx, w) = transcendental_and_kahler();
    assert_eq!(tx.gram(), &qmatrix(&[&[2, 1], &[1, 2]]));
    let g = k_gram();
    assert_eq!(g.bilinear(&w, &w), rint(6));
    assert!(g.bilinear(&w, &kappa(1)).is_zero());
    assert!(g.bilinear(&w, &kappa(2)).is_zero());
}

#[test]
fn lattice_json_has_labels() {
    let o = orbifold();
    let doc = Lattice::from_json(&o.h2x.to_json()).unwrap();
    assert!(doc.same_as(&o.h2x).unwrap());
    assert_eq!(h2_labels().len(), 22);
    assert_eq!(h2_labels()[4], "E_00^(1)");
}

#[test]
fn probe_dot_and_eigh() {
    use ndarray::array;
    use ndarray_linalg::{Eigh, UPLO};
    use num_complex::Complex64 as C64;
    let c = |re: f64, im: f64| C64::new(re, im);
    // manual vs .dot complex product
    let a = array![[c(1.0, 2.0), c(0.5, -1.0)], [c(0.0, 1.0), c(2.0, 0.0)]];
    let b = array![[c(0.0, 1.0), c(1.0, 1.0)], [c(2.0, 0.0), c(0.0, -1.0)]];
    let d = a.dot(&b);
    let mut m = ndarray::Array2::<C64>::zeros((2, 2));
    for i in 0..2 { for j in 0..2 { for k in 0..2 { m[(i,j)] += a[(i,k)]*b[(k,j)]; } } }
    println!("dot diff = {:.3e}", (&d - &m).iter().map(|z| z.norm()).fold(0.0, f64::max));

    // eigh orientation: A v = λ v with v = column?
    let h = array![[c(1.0, 0.0), c(0.0, -0.7)], [c(0.0, 0.7), c(-0.5, 0.0)]];
    let (vals, vecs) = h.eigh(UPLO::Lower).unwrap();
    for k in 0..2 {
        let vcol: ndarray::Array1<C64> = vecs.column(k).to_owned();
        let hv = h.dot(&vcol);
        let resid_col: f64 = (&hv - &vcol.mapv(|z| z * vals[k])).iter().map(|z| z.norm()).sum();
        let vrow: ndarray::Array1<C64> = vecs.row(k).to_owned();
        let hv2 = h.dot(&vrow);
        let resid_row: f64 = (&hv2 - &vrow.mapv(|z| z * vals[k])).iter().map(|z| z.norm()).sum();
        println!("k={k}: column residual {resid_col:.3e}, row residual {resid_row:.3e}");
    }
}

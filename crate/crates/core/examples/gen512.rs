//! Writes the 512-bit parameter file from its published constants:
//! `cargo run --release --example gen512 -- params/crs512.params`.

use crs_core::ec::Curve;
use crs_core::ff::PrimeField;
use crs_core::params::*;
use crs_core::protocol::*;
use num_bigint::{BigInt, BigUint};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let p: BigUint = "12037340738208845034383383978222801137092029451270197923071397735408251586669938291587857560356890516069961904754171956588530344066457839297755929645858769".parse().unwrap();
    let a = "10861338504649280383859950140772947007703646408372831934324660566888732797778932142488253565145603672591944602210571423767689240032829444439469242521864171";
    let t: BigInt = "-147189550172528104900422131912266898599387555512924231762107728432541952979290".parse().unwrap();
    let big = "5820705145470334053227175080531117674477500427730890250034150885435566207666661358363474489199364912660741178056393546696785336207";
    let fact = |two: u32| -> Vec<(BigUint, u32)> {
        let mut v: Vec<(BigUint, u32)> = vec![(2u32.into(), two), (3u32.into(), 2), (5u32.into(), 1), (7u32.into(), 1), (11u32.into(), 1), (13u32.into(), 2), (17u32.into(), 1), (103u32.into(), 1), (523u32.into(), 1), (821u32.into(), 1), (1174286389u32.into(), 1)];
        v.push((big.parse().unwrap(), 1));
        v
    };
    let field = PrimeField::new(p.clone()).unwrap();
    let e0 = Curve::montgomery(&field, field.from_decimal(a).unwrap()).unwrap().with_trace(t.clone()).unwrap();
    let dk: BigInt = BigInt::from(-8) * 20507 * 67429 * BigInt::from(11718238170290677u64) * "12248034502305872059".parse::<BigInt>().unwrap()
        * "60884358188204745129468762751254728712569".parse::<BigInt>().unwrap()
        * "68495197685926430905162211241300486171895491480444062860794276603493".parse::<BigInt>().unwrap();
    let partition = classify_primes(&p, &t, &ClassifyOptions::default());
    let velu_bounds: &[(u32, u64)] = &[(1, 409), (3, 81), (4, 54), (5, 34), (7, 10), (8, 7), (9, 6)];
    let elkies_bounds: &[(u64, u64)] = &[(23, 20), (41, 11), (43, 10), (47, 9), (73, 6), (89, 5), (107, 4), (109, 4), (113, 4), (131, 3), (151, 3),
        (157, 2), (163, 2), (167, 2), (191, 2), (193, 2), (197, 2), (223, 2), (229, 2),
        (241, 1), (251, 1), (257, 1), (277, 1), (283, 1), (293, 1), (307, 1), (317, 1), (349, 1), (359, 1)];
    let mut bounds = Bounds::new();
    for s in partition.steps() {
        let m = match s.method {
            crs_core::isogeny::Method::EE => elkies_bounds.iter().find(|x| x.0 == s.l).map(|x| x.1).unwrap_or(0),
            _ => if [431, 1061].contains(&s.l) { 0 } else { velu_bounds.iter().find(|x| x.0 == s.forward.unwrap().r).unwrap().1 },
        };
        bounds.insert(s.l, m);
    }
    let params = SystemParams {
        field, t, delta_k: dk, conductor: 2u32.into(), e0, n_factorization: fact(2), order_witness: fact(1),
        partition, bounds, r_max: 9, modpoly_manifest: manifest_digest(crs_core::modpolydb::shipped().unwrap()),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    params.check_with_curve(&mut rng).unwrap();
    std::fs::write(std::env::args().nth(1).unwrap(), params.to_text()).unwrap();
    print!("{}", params.to_text());
}

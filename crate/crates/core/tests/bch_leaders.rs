use puncstego::bch::{bch3_a4_bounds, bch3_a5_bounds};
use puncstego::bitstream::{BitstreamFile, Kind};
use puncstego::puncturing::{find_puncture_set, PunctureOptions};
use puncstego::{BchCode, BitVector, CosetLeaderTable, Limits, PuncturedDecoder, StegoScheme};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

fn histogram(m: u32) -> Vec<u64> {
    let code = BchCode::with_default_field(m, 3).unwrap();
    CosetLeaderTable::build(code.code(), &Limits::default()).unwrap().histogram().to_vec()
}

#[test]
fn weight_four_and_five_leaders_m5() {
    let a = histogram(5);
    let n = 31u64;
    assert_eq!(&a[..4], &[1, 31, 465, 4495]);
    assert_eq!(a[4] + a[5], n * (n + 1) * (5 * n + 13) / 6);
    let (lo4, hi4) = bch3_a4_bounds(n);
    let (lo5, hi5) = bch3_a5_bounds(n);
    assert!(lo4 <= a[4] && a[4] <= hi4, "A_4 = {}", a[4]);
    assert!(lo5 <= a[5] && a[5] <= hi5, "A_5 = {}", a[5]);
}

#[test]
fn weight_four_and_five_leaders_m4() {
    // r = 10 < 3m here, so only 2^10 - 576 cosets remain for weights 4 and 5
    let a = histogram(4);
    assert_eq!(&a[..4], &[1, 15, 105, 455]);
    assert_eq!(a[4] + a[5], 1024 - 576);
    assert_eq!(a[5], 28);
}

#[test]
fn seventy_bits_in_ten_blocks() {
    let parent = Arc::new(BchCode::with_default_field(4, 3).unwrap());
    let res = find_puncture_set(parent.code(), 3, &PunctureOptions::default()).unwrap();
    let scheme = StegoScheme::punctured(PuncturedDecoder::new(parent, &res.punctured).unwrap(), true);
    let (n, r) = (scheme.n(), scheme.r());
    assert_eq!((n, r), (12, 7));

    let mut rng = ChaCha8Rng::seed_from_u64(70);
    let cover: Vec<bool> = (0..120).map(|_| rng.gen()).collect();
    let msg: Vec<bool> = (0..70).map(|_| rng.gen()).collect();
    let mut stego = Vec::new();
    for b in 0..10 {
        let x = BitVector::from_bools(cover[b * n..(b + 1) * n].iter().copied());
        let m = BitVector::from_bools(msg[b * r..(b + 1) * r].iter().copied());
        let s = scheme.embed(&x, &m).unwrap().stego().unwrap();
        assert!(s.distance(&x) <= 3);
        stego.extend(s.iter());
    }
    let file = BitstreamFile::new(Kind::Stego, n as u32, r as u32, stego, 70).unwrap();
    let file = BitstreamFile::from_bytes(&file.to_bytes()).unwrap();
    assert_eq!((file.blocks, file.pad), (10, 0));
    let mut back = Vec::new();
    for b in 0..file.blocks {
        back.extend(scheme.extract(&file.block(b)).unwrap().iter());
    }
    assert_eq!(back, msg);
}

//! Trajectory export: human-readable CSV and a bitwise-exact binary
//! checkpoint (magic "P1TRAJ1\n") for resuming long continuations.

use crate::state::{P1State, P1Trajectory, TrajEvent};
use ddreal::{CDd, Cx, Dd, Scalar};
use std::fs::File;
use std::io::{self, BufReader, BufWriter, Read, Write};
use std::path::Path;

const MAGIC: &[u8; 8] = b"P1TRAJ1\n";

pub fn write_csv(path: &Path, traj: &P1Trajectory<CDd>) -> io::Result<()> {
    let mut f = BufWriter::new(File::create(path)?);
    writeln!(f, "re(z),im(z),re(y),im(y),re(y'),im(y'),|E-drift|")?;
    for s in &traj.states {
        writeln!(
            f,
            "{},{},{},{},{},{},{:.3e}",
            s.z.re.to_sci(26),
            s.z.im.to_sci(26),
            s.y.re.to_sci(26),
            s.y.im.to_sci(26),
            s.yp.re.to_sci(26),
            s.yp.im.to_sci(26),
            s.energy_drift()
        )?;
    }
    f.flush()
}

fn event_byte(e: TrajEvent) -> u8 {
    match e {
        TrajEvent::ReachedEnd => 0,
        TrajEvent::BlowUp { underflow: false } => 1,
        TrajEvent::BlowUp { underflow: true } => 2,
        TrajEvent::MaxSteps => 3,
    }
}

fn event_from(b: u8) -> Option<TrajEvent> {
    match b {
        0 => Some(TrajEvent::ReachedEnd),
        1 => Some(TrajEvent::BlowUp { underflow: false }),
        2 => Some(TrajEvent::BlowUp { underflow: true }),
        3 => Some(TrajEvent::MaxSteps),
        _ => None,
    }
}

fn push_cx(buf: &mut Vec<u8>, v: CDd) {
    for part in [v.re, v.im] {
        buf.extend_from_slice(&part.hi.to_bits().to_le_bytes());
        buf.extend_from_slice(&part.lo.to_bits().to_le_bytes());
    }
}

pub fn write_checkpoint(path: &Path, traj: &P1Trajectory<CDd>) -> io::Result<()> {
    let mut buf = Vec::with_capacity(17 + traj.states.len() * 160);
    buf.extend_from_slice(MAGIC);
    buf.push(event_byte(traj.event));
    buf.extend_from_slice(&(traj.states.len() as u64).to_le_bytes());
    buf.extend_from_slice(&traj.max_drift.to_bits().to_le_bytes());
    for s in &traj.states {
        for v in [s.z, s.y, s.yp, s.i_path, s.e_const] {
            push_cx(&mut buf, v);
        }
    }
    let mut f = BufWriter::new(File::create(path)?);
    f.write_all(&buf)?;
    f.flush()
}

fn bad(msg: &str) -> io::Error {
    io::Error::new(io::ErrorKind::InvalidData, msg)
}

pub fn read_checkpoint(path: &Path) -> io::Result<P1Trajectory<CDd>> {
    let mut f = BufReader::new(File::open(path)?);
    let mut magic = [0u8; 8];
    f.read_exact(&mut magic)?;
    if &magic != MAGIC {
        return Err(bad("not a P1TRAJ1 checkpoint"));
    }
    let mut b1 = [0u8; 1];
    f.read_exact(&mut b1)?;
    let event = event_from(b1[0]).ok_or_else(|| bad("unknown event byte"))?;
    let mut b8 = [0u8; 8];
    f.read_exact(&mut b8)?;
    let count = u64::from_le_bytes(b8) as usize;
    f.read_exact(&mut b8)?;
    let max_drift = f64::from_bits(u64::from_le_bytes(b8));
    if count == 0 {
        return Err(bad("empty trajectory"));
    }
    let mut states = Vec::with_capacity(count);
    let mut rec = [0u8; 160];
    for _ in 0..count {
        f.read_exact(&mut rec)?;
        let mut vals = [CDd::zero(); 5];
        for (i, v) in vals.iter_mut().enumerate() {
            let mut f64s = [0.0f64; 4];
            for (j, fj) in f64s.iter_mut().enumerate() {
                let off = i * 32 + j * 8;
                *fj = f64::from_bits(u64::from_le_bytes(rec[off..off + 8].try_into().unwrap()));
            }
            *v = Cx::new(Dd { hi: f64s[0], lo: f64s[1] }, Dd { hi: f64s[2], lo: f64s[3] });
        }
        states.push(P1State {
            z: vals[0],
            y: vals[1],
            yp: vals[2],
            i_path: vals[3],
            e_const: vals[4],
        });
    }
    Ok(P1Trajectory { states, event, max_drift })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::integrate::integrate_path;
    use crate::state::StepControl;

    fn sample_traj() -> P1Trajectory<CDd> {
        let start = P1State::start(
            Cx::new(Dd::from_f64(0.0), Dd::from_f64(0.0)),
            Cx::new(Dd::from_f64(0.1), Dd::from_f64(0.05)),
            Cx::new(Dd::from_f64(-0.2), Dd::from_f64(0.3)),
        );
        integrate_path(start, &[Cx::new(Dd::from_f64(0.8), Dd::from_f64(0.4))], StepControl::default())
    }

    #[test]
    fn checkpoint_round_trip_is_bitwise() {
        let traj = sample_traj();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t.ckpt");
        write_checkpoint(&path, &traj).unwrap();
        let back = read_checkpoint(&path).unwrap();
        assert_eq!(back.event, traj.event);
        assert_eq!(back.max_drift.to_bits(), traj.max_drift.to_bits());
        assert_eq!(back.states.len(), traj.states.len());
        for (a, b) in back.states.iter().zip(&traj.states) {
            for (u, v) in [(a.z, b.z), (a.y, b.y), (a.yp, b.yp), (a.i_path, b.i_path), (a.e_const, b.e_const)] {
                assert_eq!(u.re.hi.to_bits(), v.re.hi.to_bits());
                assert_eq!(u.re.lo.to_bits(), v.re.lo.to_bits());
                assert_eq!(u.im.hi.to_bits(), v.im.hi.to_bits());
                assert_eq!(u.im.lo.to_bits(), v.im.lo.to_bits());
            }
        }
    }

    #[test]
    fn rejects_foreign_files() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("junk.ckpt");
        std::fs::write(&path, b"NOTATRAJ________").unwrap();
        assert!(read_checkpoint(&path).is_err());
    }

    #[test]
    fn csv_parses_back() {
        let traj = sample_traj();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t.csv");
        write_csv(&path, &traj).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "re(z),im(z),re(y),im(y),re(y'),im(y'),|E-drift|"
        );
        let rows: Vec<&str> = lines.collect();
        assert_eq!(rows.len(), traj.states.len());
        for (row, s) in rows.iter().zip(&traj.states) {
            let cols: Vec<f64> = row.split(',').map(|c| c.parse().unwrap()).collect();
            assert_eq!(cols.len(), 7);
            assert!((cols[0] - s.z.re.to_f64()).abs() <= 1e-15 * (1.0 + s.z.re.to_f64().abs()));
            assert!((cols[2] - s.y.re.to_f64()).abs() <= 1e-15 * (1.0 + s.y.re.to_f64().abs()));
            assert!(cols[6] >= 0.0);
        }
    }
}

//! Complex literals of the form `a`, `bi`, `a+bi` with no interior spaces.
//! Exponent notation works in either part: `1e-3+2.5e2i`.

use num_complex::Complex64;

pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    if s.is_empty() {
        return Err(String::from("empty complex literal"));
    }
    let fail = || format!("invalid complex literal '{s}'");

    let Some(body) = s.strip_suffix('i') else {
        let re: f64 = s.parse().map_err(|_| fail())?;
        if !re.is_finite() {
            return Err(fail());
        }
        return Ok(Complex64::new(re, 0.0));
    };

    // Split at the last sign that is neither leading nor part of an
    // exponent; everything after it is the imaginary coefficient.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| {
            (bytes[k] == b'+' || bytes[k] == b'-')
                && bytes[k - 1] != b'e'
                && bytes[k - 1] != b'E'
        });

    let (re, im_part) = match split {
        Some(k) => {
            let re: f64 = body[..k].parse().map_err(|_| fail())?;
            (re, &body[k..])
        }
        None => (0.0, body),
    };
    let im: f64 = match im_part {
        "" | "+" => 1.0,
        "-" => -1.0,
        t => t.parse().map_err(|_| fail())?,
    };
    if !re.is_finite() || !im.is_finite() {
        return Err(fail());
    }
    Ok(Complex64::new(re, im))
}

pub fn parse_coeff_list(s: &str) -> Result<Vec<Complex64>, String> {
    s.split(',').map(parse_complex).collect()
}

pub fn parse_size(s: &str) -> Result<(usize, usize), String> {
    let fail = || format!("invalid size '{s}', expected WxH");
    let (w, h) = s.split_once('x').ok_or_else(fail)?;
    let w: usize = w.parse().map_err(|_| fail())?;
    let h: usize = h.parse().map_err(|_| fail())?;
    if w == 0 || h == 0 {
        return Err(fail());
    }
    Ok((w, h))
}

pub fn parse_half_width(s: &str) -> Result<f64, String> {
    let v: f64 = s
        .parse()
        .map_err(|_| format!("invalid half-width '{s}'"))?;
    if !v.is_finite() || v <= 0.0 {
        return Err(format!("half-width must be positive, got '{s}'"));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepted_forms() {
        assert_eq!(parse_complex("2").unwrap(), Complex64::new(2.0, 0.0));
        assert_eq!(parse_complex("-1.5").unwrap(), Complex64::new(-1.5, 0.0));
        assert_eq!(parse_complex("3i").unwrap(), Complex64::new(0.0, 3.0));
        assert_eq!(parse_complex("-1.5+2i").unwrap(), Complex64::new(-1.5, 2.0));
        assert_eq!(parse_complex("1-2i").unwrap(), Complex64::new(1.0, -2.0));
        assert_eq!(parse_complex("i").unwrap(), Complex64::new(0.0, 1.0));
        assert_eq!(parse_complex("-i").unwrap(), Complex64::new(0.0, -1.0));
        assert_eq!(parse_complex("2+i").unwrap(), Complex64::new(2.0, 1.0));
        assert_eq!(parse_complex("1e-3").unwrap(), Complex64::new(1e-3, 0.0));
        assert_eq!(parse_complex("3e+2i").unwrap(), Complex64::new(0.0, 300.0));
        assert_eq!(
            parse_complex("1e2-2.5e-1i").unwrap(),
            Complex64::new(100.0, -0.25)
        );
    }

    #[test]
    fn rejected_forms() {
        for bad in ["", "x", "1+", "+", "1 + 2i", "2i3", "nan", "inf", "1+nani", "--2"] {
            assert!(parse_complex(bad).is_err(), "accepted '{bad}'");
        }
    }

    #[test]
    fn coefficient_lists_and_sizes() {
        let v = parse_coeff_list("0,1,-2i").unwrap();
        assert_eq!(v.len(), 3);
        assert_eq!(v[2], Complex64::new(0.0, -2.0));
        assert!(parse_coeff_list("1,,2").is_err());

        assert_eq!(parse_size("512x384").unwrap(), (512, 384));
        assert!(parse_size("512").is_err());
        assert!(parse_size("0x4").is_err());
        assert!(parse_half_width("2.5").is_ok());
        assert!(parse_half_width("-1").is_err());
    }
}

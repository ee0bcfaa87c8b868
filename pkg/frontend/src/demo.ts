/** Demo dataset: a real-home-price-index style series, 1890-2006.
 *
 * The shape is chosen so the checker's feature ranking tells a story:
 * the 1997 low and the sharp rise after it are the top two features,
 * the 1921 global minimum is third, and the long early decline and
 * recovery show up as fainter bars.
 */

import type { ChartSpecJson } from "./api.js";

const DEMO_ROWS = [
  "date,value",
  "1890-01-01,100.0",
  "1891-01-01,101.0",
  "1892-01-01,100.4",
  "1893-01-01,101.2",
  "1894-01-01,102.0",
  "1895-01-01,101.071",
  "1896-01-01,100.143",
  "1897-01-01,99.214",
  "1898-01-01,98.286",
  "1899-01-01,97.357",
  "1900-01-01,96.429",
  "1901-01-01,95.5",
  "1902-01-01,94.571",
  "1903-01-01,93.643",
  "1904-01-01,92.714",
  "1905-01-01,91.786",
  "1906-01-01,90.857",
  "1907-01-01,89.929",
  "1908-01-01,89.0",
  "1909-01-01,87.154",
  "1910-01-01,85.308",
  "1911-01-01,83.462",
  "1912-01-01,81.615",
  "1913-01-01,79.769",
  "1914-01-01,77.923",
  "1915-01-01,76.077",
  "1916-01-01,74.231",
  "1917-01-01,72.385",
  "1918-01-01,70.538",
  "1919-01-01,68.692",
  "1920-01-01,66.846",
  "1921-01-01,65.0",
  "1922-01-01,65.635",
  "1923-01-01,66.27",
  "1924-01-01,66.905",
  "1925-01-01,67.54",
  "1926-01-01,68.175",
  "1927-01-01,68.81",
  "1928-01-01,69.444",
  "1929-01-01,70.079",
  "1930-01-01,70.714",
  "1931-01-01,71.349",
  "1932-01-01,71.984",
  "1933-01-01,72.619",
  "1934-01-01,73.254",
  "1935-01-01,73.889",
  "1936-01-01,74.524",
  "1937-01-01,75.159",
  "1938-01-01,75.794",
  "1939-01-01,76.429",
  "1940-01-01,77.063",
  "1941-01-01,77.698",
  "1942-01-01,78.333",
  "1943-01-01,78.968",
  "1944-01-01,79.603",
  "1945-01-01,80.238",
  "1946-01-01,80.873",
  "1947-01-01,81.508",
  "1948-01-01,82.143",
  "1949-01-01,82.778",
  "1950-01-01,83.413",
  "1951-01-01,84.048",
  "1952-01-01,84.683",
  "1953-01-01,85.317",
  "1954-01-01,85.952",
  "1955-01-01,86.587",
  "1956-01-01,87.222",
  "1957-01-01,87.857",
  "1958-01-01,88.492",
  "1959-01-01,89.127",
  "1960-01-01,89.762",
  "1961-01-01,90.397",
  "1962-01-01,91.032",
  "1963-01-01,91.667",
  "1964-01-01,92.302",
  "1965-01-01,92.937",
  "1966-01-01,93.571",
  "1967-01-01,94.206",
  "1968-01-01,94.841",
  "1969-01-01,95.476",
  "1970-01-01,96.111",
  "1971-01-01,96.746",
  "1972-01-01,97.381",
  "1973-01-01,98.016",
  "1974-01-01,98.651",
  "1975-01-01,99.286",
  "1976-01-01,99.921",
  "1977-01-01,100.556",
  "1978-01-01,101.19",
  "1979-01-01,101.825",
  "1980-01-01,102.46",
  "1981-01-01,103.095",
  "1982-01-01,103.73",
  "1983-01-01,104.365",
  "1984-01-01,105.0",
  "1985-01-01,111.0",
  "1986-01-01,114.5",
  "1987-01-01,118.0",
  "1988-01-01,121.5",
  "1989-01-01,125.0",
  "1990-01-01,123.125",
  "1991-01-01,121.25",
  "1992-01-01,119.375",
  "1993-01-01,117.5",
  "1994-01-01,115.625",
  "1995-01-01,113.75",
  "1996-01-01,111.875",
  "1997-01-01,110.0",
  "1998-01-01,119.444",
  "1999-01-01,128.889",
  "2000-01-01,138.333",
  "2001-01-01,147.778",
  "2002-01-01,157.222",
  "2003-01-01,166.667",
  "2004-01-01,176.111",
  "2005-01-01,185.556",
  "2006-01-01,195.0",
];

export const DEMO_CSV = DEMO_ROWS.join("\n") + "\n";

export const DEMO_SPEC: ChartSpecJson = {
  plotWidth: 800,
  plotHeight: 500,
  xRange: ["1890-01-01", "2006-01-01"],
  yRange: [50, 200],
};

export const DEMO_TITLE = "Real home price index, 1890-2006";

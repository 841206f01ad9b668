/* C API for the dlab shared library: opaque handles, integer status codes. */
#ifndef DLAB_H
#define DLAB_H

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes returned by int functions and dlab_last_status. */
#define DLAB_OK 0
#define DLAB_INTERNAL 1
#define DLAB_USAGE 2
#define DLAB_RESOLUTION 3
#define DLAB_DIVERGENCE 4
#define DLAB_IO 5

const char* dlab_version(void);

/* Message and status of the last failing call on this thread ("" / 0 after a
 * success).  Pointer-returning functions signal failure with NULL. */
const char* dlab_last_error(void);
int dlab_last_status(void);

typedef struct dlab_grid dlab_grid;
typedef struct dlab_field dlab_field;

/* Spacetime lattice [-L,L) x [-Tw,Tw); Nx, Nt powers of two >= 4. */
dlab_grid* dlab_grid_create(double L, int Nx, double Tw, int Nt);
void dlab_grid_free(dlab_grid* g);
int dlab_grid_dims(const dlab_grid* g, double* L, int* Nx, double* Tw, int* Nt);

/* DLF1 files; rep: 0 physical, 1 mode, 2 spectral (-1 on a bad handle). */
dlab_field* dlab_field_load(const char* path);
int dlab_field_save(const dlab_field* f, const char* path);
void dlab_field_free(dlab_field* f);
int dlab_field_rep(const dlab_field* f);

/* Deterministic pseudo-random spectral field for demos and round-trips. */
dlab_field* dlab_demo_field(const dlab_grid* g, unsigned long long seed);

/* name: l2, hs, xsb, besov, y, z, z-oracle, w, w-oracle; s and b feed the
 * weighted norms and are ignored elsewhere. */
int dlab_field_norm(const dlab_field* f, const char* name, double s, double b, double* out);

/* CSV documents: header row, data rows, trailing "# config: ..." comment.
 * Identical arguments give byte-identical strings.  Free the result with
 * dlab_free_string; NULL means failure (see dlab_last_error). */
char* dlab_norms_csv(const char* path, const char* norm, double s, double b, const char* method);
char* dlab_picard_csv(const char* data, double amplitude, int K, double tol, int N);
char* dlab_cascade_csv(double s, double sprime, double r, const int* N_list, int n,
                       const char* normalize);
char* dlab_fuzz_csv(const char* estimate, int trials, unsigned long long seed, int j1, int j2,
                    int j, int d, int d2, double D, int offset, int wrong_exponent,
                    const char* grids);
void dlab_free_string(char* s);

/* Runs the quick invariant suite; one line per check through cb (may be NULL).
 * Returns the number of failed checks, or a negative status on setup failure. */
typedef void (*dlab_line_cb)(const char* line, void* user);
int dlab_selftest(dlab_line_cb cb, void* user);

#ifdef __cplusplus
}
#endif

#endif /* DLAB_H */

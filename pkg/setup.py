from setuptools import setup

# get the version and the long description without an import
VERSION = "Undefined"
DOC = ""
inside_doc = False
for line in open('spectral_cs/__init__.py'):
    if "'''" in line:
        inside_doc = not inside_doc
    if inside_doc:
        DOC += line.replace("'''", "")

    if (line.startswith('VERSION')):
        exec(line.strip())

setup(
    name='spectral-cs',
    packages=['spectral_cs', 'spectral_cs.test'],
    scripts=['scripts/spectral-cs'],
    description='Jacobi operators, canonical systems and their Weyl m-functions',
    long_description=DOC,
    test_suite='spectral_cs.test',
    install_requires=['numpy'],
    tests_require=['scipy'],
    extras_require={'test': ['scipy']},
    python_requires='>=3.6',
    entry_points = {
        'spectral_cs.checks': [
            'wronskian = spectral_cs.checks:Wronskian',
            'transfer = spectral_cs.checks:Transfer',
            'roundtrip = spectral_cs.checks:Roundtrip',
            'sin-identity = spectral_cs.checks:SinIdentity',
            'm-equality = spectral_cs.checks:MEquality',
            'herglotz = spectral_cs.checks:Herglotz',
            'asymptotics = spectral_cs.checks:Asymptotics',
            'jacobi-phase = spectral_cs.checks:JacobiPhase',
            'discrete-schrodinger = spectral_cs.checks:DiscreteSchrodinger',
        ]
    },
    version=VERSION,
    classifiers = [
        'Development Status :: 3 - Alpha',
        'Intended Audience :: Science/Research',
        'Operating System :: OS Independent',
        'Programming Language :: Python',
        'Programming Language :: Python :: 3',
        'Topic :: Scientific/Engineering :: Mathematics',
      ],
    keywords='spectral theory, Jacobi operators, canonical systems',
    include_package_data=True,
    package_data = {
        '': ['*.json'],
        },
)

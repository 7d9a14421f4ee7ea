from setuptools import setup, find_packages

setup(
    name='trotterdisorder',
    version='0.1.0',
    description='Trotterized Fermi-Hubbard simulation with coherent over-rotation errors '
                'and their effective disorder Hamiltonian.',
    author='',
    author_email='',
    install_requires=['torch>=1.9.0', 'numpy', 'pytorch-lightning', 'wandb', 'tqdm', 'pyyaml'],
    packages=find_packages(exclude=['tests', 'examples', 'examples.*']),
    py_modules=['simulate'],
    entry_points={'console_scripts': ['trotterdisorder=simulate:cli']},
)
